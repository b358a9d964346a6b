"""Pipeline stages"""

from .base_stage import BaseStage
from .ingestion_stage import IngestionStage
from .graph_stage import GraphStage, ViewGraphs
from .metric_stage import MetricLearningStage
from .clustering_stage import ClusteringStage
from .keyframe_stage import KeyframeStage

__all__ = [
    'BaseStage',
    'IngestionStage',
    'GraphStage',
    'ViewGraphs',
    'MetricLearningStage',
    'ClusteringStage',
    'KeyframeStage'
]
