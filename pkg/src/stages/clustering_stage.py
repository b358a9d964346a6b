"""
Clustering stage: spectral embedding of the learned Laplacian and k-means.
"""

import asyncio
from typing import Tuple

from .base_stage import BaseStage
from ..algorithms.clustering import embed, kmeans
from ..models.data_models import ClusterAssignment, Laplacian, SpectralEmbedding
from ..models.summary_models import ClusteringOptions


class ClusteringStage(BaseStage):
    """Clusters frames in the learned metric space"""

    def __init__(self, c: int, options: ClusteringOptions, seed: int):
        super().__init__("clustering")
        self.c = c
        self.options = options
        self.seed = seed

    def _cluster(self, laplacian: Laplacian) -> Tuple[SpectralEmbedding, ClusterAssignment]:
        embedding = embed(laplacian, self.c, self.options.row_normalize)
        assignment = kmeans(embedding, self.c, self.options.restarts, self.options.max_iters, self.seed)
        return embedding, assignment

    async def process(self, laplacian: Laplacian) -> Tuple[SpectralEmbedding, ClusterAssignment]:
        return await asyncio.to_thread(self._cluster, laplacian)
