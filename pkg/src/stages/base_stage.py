"""
Base stage class for the summarization pipeline.
"""

import logging
import time
from abc import ABC, abstractmethod
from typing import Any, Optional

from ..models.exceptions import MVMLError, StageError

logger = logging.getLogger(__name__)


class BaseStage(ABC):
    """
    One step of the pipeline.

    Subclasses implement process(); callers go through run(), which tracks
    status and elapsed time and tags any failure with the stage name.
    """

    def __init__(self, name: str):
        self.name = name
        self.status = "idle"
        self.elapsed: Optional[float] = None

    @abstractmethod
    async def process(self, input_data: Any) -> Any:
        """Transform the previous stage's output (types vary by stage)"""

    async def run(self, input_data: Any) -> Any:
        self.status = "running"
        started = time.perf_counter()
        logger.info("stage %s started", self.name)
        try:
            result = await self.process(input_data)
        except StageError:
            self.status = "failed"
            raise
        except (MVMLError, ValueError, ArithmeticError) as e:
            self.status = "failed"
            logger.error("stage %s failed: %s", self.name, e)
            raise StageError(self.name, e) from e
        finally:
            self.elapsed = time.perf_counter() - started
        self.status = "completed"
        logger.info("stage %s completed in %.3fs", self.name, self.elapsed)
        return result

    def get_status(self) -> str:
        return self.status
