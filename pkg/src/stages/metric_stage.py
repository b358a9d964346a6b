"""
Metric learning stage: alternating descent over the view weights.
"""

import asyncio

from .base_stage import BaseStage
from ..algorithms.optimizer import alternate
from ..models.data_models import LaplacianBundle, OptimizerConfig, OptimizerResult


class MetricLearningStage(BaseStage):
    """Learns the combined Laplacian from the view bundle"""

    def __init__(self, config: OptimizerConfig):
        super().__init__("metric-learning")
        self.config = config

    async def process(self, bundle: LaplacianBundle) -> OptimizerResult:
        return await asyncio.to_thread(alternate, bundle, self.config)
