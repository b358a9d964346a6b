"""
Keyframe stage: one representative frame per cluster and the view to show it from.
"""

from typing import List, Tuple

from .base_stage import BaseStage
from ..algorithms.clustering import representatives, select_view
from ..models.data_models import ClusterAssignment, KernelMatrix, Representatives, SpectralEmbedding


class KeyframeStage(BaseStage):
    """
    Picks the frame nearest each cluster mean, then the view in which that
    frame looks most like the rest of its cluster. Frame indices are mapped
    back to source frames through the stride.
    """

    def __init__(self, kernels: List[KernelMatrix], strategy: str, frame_stride: int = 1):
        super().__init__("keyframes")
        self.kernels = kernels
        self.strategy = strategy
        self.frame_stride = frame_stride

    async def process(self, clustered: Tuple[SpectralEmbedding, ClusterAssignment]) -> Representatives:
        embedding, assignment = clustered
        entries = []
        for cluster, frame in representatives(embedding, assignment):
            view = select_view(frame, self.kernels, assignment.members(cluster), self.strategy)
            entries.append((cluster, frame * self.frame_stride, view))
        return Representatives(entries)
