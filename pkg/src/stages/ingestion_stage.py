"""
Ingestion stage: read and synchronize the per-view feature files.
"""

import asyncio
import logging

from .base_stage import BaseStage
from ..config.settings import settings
from ..models.summary_models import DatasetSpec, ViewSet
from ..utils.feature_io import load_views

logger = logging.getLogger(__name__)


class IngestionStage(BaseStage):
    """Loads K synchronized views from CSV"""

    def __init__(self):
        super().__init__("ingest")

    async def process(self, spec: DatasetSpec) -> ViewSet:
        limit = settings.max_frames_warning
        loaded = await asyncio.to_thread(load_views, spec)
        if loaded.n > limit:
            logger.warning("%d frames: dense kernels need O(n^2) memory; consider a frame stride", loaded.n)
        return loaded
