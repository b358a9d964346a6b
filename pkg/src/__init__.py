"""
Multi-view metric learning for keyframe summarization.

Learns a convex combination of per-view graph Laplacians, clusters frames in
the learned spectral embedding and picks one representative frame per cluster.
"""

__version__ = "1.0.0"
