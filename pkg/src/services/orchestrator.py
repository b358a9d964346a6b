"""
Run management and orchestration of the multi-view summarization pipeline.
"""

import asyncio
import logging
import uuid
from datetime import datetime
from typing import Any, Dict, Optional, Tuple

from sqlalchemy.exc import SQLAlchemyError

from .. import __version__
from ..config.settings import settings
from ..models.data_models import OptimizerConfig, OptimizerResult
from ..models.database import RunDatabase, RunModel
from ..models.summary_models import ClusteringOptions, DatasetSpec, SummaryManifest, ViewSet
from ..stages import (
    ClusteringStage,
    GraphStage,
    IngestionStage,
    KeyframeStage,
    MetricLearningStage,
    ViewGraphs,
)

logger = logging.getLogger(__name__)


class RunManager:
    """Tracks runs in memory and, when a database URL is configured, in SQL"""

    def __init__(self, database_url: Optional[str] = None):
        self.runs: Dict[str, Dict[str, Any]] = {}
        self.database: Optional[RunDatabase] = None

        url = settings.database_url if database_url is None else database_url
        if url:
            try:
                self.database = RunDatabase(url)
            except SQLAlchemyError as e:
                logger.warning("run registry unavailable, tracking in memory only: %s", e)

    def create_run(self, command: str, config: Dict[str, Any], output_path: Optional[str] = None) -> str:
        """Create a new run entry"""
        run_id = str(uuid.uuid4())
        self.runs[run_id] = {
            'id': run_id,
            'command': command,
            'status': 'pending',
            'progress': 0.0,
            'message': 'Run created',
            'config': config,
            'output_path': output_path,
            'created_at': datetime.now().isoformat()
        }

        if self.database is not None:
            try:
                db = next(self.database.get_db())
                db.add(RunModel(id=run_id, command=command, status='pending', progress=0.0,
                                message='Run created', config=config, output_path=output_path))
                db.commit()
                db.close()
            except SQLAlchemyError as e:
                logger.warning("could not save run %s: %s", run_id, e)
        return run_id

    def update_run(self, run_id: str, **kwargs):
        """Update run status, progress, message or result"""
        if run_id in self.runs:
            self.runs[run_id].update(kwargs)
            logger.debug("run %s: status=%s progress=%s", run_id, kwargs.get('status'), kwargs.get('progress'))

        if self.database is not None:
            try:
                db = next(self.database.get_db())
                run = db.query(RunModel).filter(RunModel.id == run_id).first()
                if run:
                    for key, value in kwargs.items():
                        if hasattr(run, key):
                            setattr(run, key, value)
                    if kwargs.get('status') in ('completed', 'failed'):
                        run.completed_at = datetime.now()
                    db.commit()
                db.close()
            except SQLAlchemyError as e:
                logger.warning("could not update run %s: %s", run_id, e)

    def get_run(self, run_id: str) -> Optional[Dict[str, Any]]:
        """Get run status"""
        return self.runs.get(run_id)


class SummaryOrchestrator:
    """
    Runs the summarization pipeline: ingest -> graph -> metric learning ->
    clustering -> keyframes, and assembles the manifest.
    """

    def __init__(self, run_manager: Optional[RunManager] = None):
        self.run_manager = run_manager or RunManager()

    def _progress(self, run_id: Optional[str], progress: float, message: str):
        if run_id is not None:
            self.run_manager.update_run(run_id, status='running', progress=progress, message=message)

    async def _learn(self, spec: DatasetSpec, config: OptimizerConfig,
                     run_id: Optional[str]) -> Tuple[ViewSet, ViewGraphs, OptimizerResult]:
        self._progress(run_id, 10.0, "Loading views...")
        loaded = await IngestionStage().run(spec)

        self._progress(run_id, 25.0, "Building view graphs...")
        graphs = await GraphStage(spec.bandwidth).run(loaded.views)

        self._progress(run_id, 50.0, "Learning metric...")
        result = await MetricLearningStage(config).run(graphs.bundle)
        return loaded, graphs, result

    async def learn_metric(self, spec: DatasetSpec, config: OptimizerConfig,
                           run_id: Optional[str] = None) -> Dict[str, Any]:
        """Stages up to metric learning; returns weights, trace and provenance"""
        try:
            loaded, graphs, result = await self._learn(spec, config, run_id)
        except Exception as e:
            if run_id is not None:
                self.run_manager.update_run(run_id, status='failed', message=str(e))
            raise

        report = {
            'schema': settings.manifest_schema,
            'tool_version': __version__,
            'n': graphs.bundle.n,
            'source_frames': loaded.source_frames,
            'k': graphs.bundle.k,
            'c': config.c,
            'gamma': config.gamma,
            'sigma_per_view': graphs.sigmas,
            **result.to_dict(),
            'seed': config.seed,
            'config': {'dataset': spec.to_dict(), 'optimizer': config.to_dict()}
        }
        if run_id is not None:
            self.run_manager.update_run(run_id, status='completed', progress=100.0,
                                        message='Metric learned', result={'weights': report['weights']})
        return report

    async def summarize(self, spec: DatasetSpec, config: OptimizerConfig,
                        options: ClusteringOptions = ClusteringOptions(),
                        run_id: Optional[str] = None) -> SummaryManifest:
        """
        Full keyframe summarization.

        Any stage failure is raised as StageError naming the stage.
        """
        try:
            loaded, graphs, result = await self._learn(spec, config, run_id)

            self._progress(run_id, 75.0, "Clustering frames...")
            clustered = await ClusteringStage(config.c, options, config.seed).run(result.combined)

            self._progress(run_id, 90.0, "Selecting keyframes...")
            keyframes = KeyframeStage(graphs.kernels, options.view_strategy, spec.frame_stride)
            reps = await keyframes.run(clustered)
        except Exception as e:
            if run_id is not None:
                self.run_manager.update_run(run_id, status='failed', message=str(e))
            raise

        _, assignment = clustered
        manifest = SummaryManifest(
            n=graphs.bundle.n,
            k=graphs.bundle.k,
            c=config.c,
            gamma=config.gamma,
            sigma_per_view=graphs.sigmas,
            weights=result.weights,
            objective_trace=result.objective_trace,
            converged=result.converged,
            iterations=result.iterations,
            labels=assignment.labels.tolist(),
            representatives=reps,
            seed=config.seed,
            tool_version=__version__,
            frame_stride=spec.frame_stride,
            source_frames=loaded.source_frames,
            config={
                'dataset': spec.to_dict(),
                'optimizer': config.to_dict(),
                'clustering': options.to_dict()
            },
            schema=settings.manifest_schema
        )

        if run_id is not None:
            self.run_manager.update_run(run_id, status='completed', progress=100.0,
                                        message='Summary written', result={'frames': manifest.summary_frames})
        logger.info("✅ summary complete: %d keyframes from %d views", manifest.c, manifest.k)
        return manifest


def summarize(spec: DatasetSpec, config: OptimizerConfig,
              options: ClusteringOptions = ClusteringOptions()) -> SummaryManifest:
    """Synchronous entry point for library callers"""
    return asyncio.run(SummaryOrchestrator().summarize(spec, config, options))


def learn_metric(spec: DatasetSpec, config: OptimizerConfig) -> Dict[str, Any]:
    """Synchronous metric learning without clustering"""
    return asyncio.run(SummaryOrchestrator().learn_metric(spec, config))
