"""
Graph stage: one RBF kernel and trace-normalized Laplacian per view.
"""

import asyncio
from dataclasses import dataclass
from typing import List

from .base_stage import BaseStage
from ..algorithms.graph import build_view_laplacian
from ..models.data_models import BandwidthPolicy, FeatureMatrix, KernelMatrix, LaplacianBundle


@dataclass
class ViewGraphs:
    """Per-view kernels with the bundle of their Laplacians"""
    kernels: List[KernelMatrix]
    bundle: LaplacianBundle

    @property
    def sigmas(self) -> List[float]:
        return [kernel.sigma for kernel in self.kernels]


class GraphStage(BaseStage):
    """Builds the view graphs concurrently; results keep view order"""

    def __init__(self, bandwidth: BandwidthPolicy):
        super().__init__("graph")
        self.bandwidth = bandwidth

    async def process(self, views: List[FeatureMatrix]) -> ViewGraphs:
        built = await asyncio.gather(*(
            asyncio.to_thread(build_view_laplacian, view, self.bandwidth) for view in views
        ))
        kernels = [kernel for kernel, _ in built]
        bundle = LaplacianBundle([lap for _, lap in built])
        return ViewGraphs(kernels=kernels, bundle=bundle)
