"""
Data models for summarization runs: dataset description, ground truth and
the summary manifest written to disk.
"""

from dataclasses import dataclass, field
from typing import List, Dict, Any, Optional, Tuple

from .data_models import BandwidthPolicy, FeatureMatrix, Representatives, ViewWeights
from .exceptions import InvalidInputError, InvalidParameterError, ParseError


@dataclass
class DatasetSpec:
    """Where the synchronized views live and how to turn them into graphs"""
    view_paths: List[str]
    bandwidth: BandwidthPolicy = field(default_factory=BandwidthPolicy.median)
    ground_truth_path: Optional[str] = None
    frame_stride: int = 1

    def __post_init__(self):
        self.view_paths = [str(path) for path in self.view_paths]
        if not self.view_paths:
            raise InvalidInputError("at least one view file is required")
        if len(set(self.view_paths)) != len(self.view_paths):
            raise InvalidInputError("view paths must be distinct")
        if self.frame_stride < 1:
            raise InvalidParameterError(f"frame stride must be >= 1, got {self.frame_stride}")

    @property
    def k(self) -> int:
        return len(self.view_paths)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'view_paths': self.view_paths,
            'bandwidth': self.bandwidth.to_dict(),
            'ground_truth_path': self.ground_truth_path,
            'frame_stride': self.frame_stride
        }


@dataclass
class ViewSet:
    """Synchronized views after the frame stride, with the recording's own length"""
    views: List[FeatureMatrix]
    source_frames: int
    frame_stride: int = 1

    def __post_init__(self):
        if not self.views:
            raise InvalidInputError("a view set needs at least one view")
        if len({view.n for view in self.views}) != 1:
            raise InvalidInputError("views in a set must have the same number of frames")
        check_source_frames(self.n, self.frame_stride, self.source_frames)

    @property
    def n(self) -> int:
        return self.views[0].n

    @property
    def k(self) -> int:
        return len(self.views)


def check_source_frames(n: int, frame_stride: int, source_frames: int):
    """Keeping every frame_stride-th of source_frames frames must leave exactly n"""
    if not (n - 1) * frame_stride < source_frames <= n * frame_stride:
        raise InvalidInputError(
            f"{source_frames} source frames at stride {frame_stride} cannot yield {n} frames")


@dataclass(frozen=True)
class ClusteringOptions:
    """k-means and keyframe selection settings"""
    row_normalize: bool = True
    restarts: int = 10
    max_iters: int = 300
    view_strategy: str = "similarity"

    def to_dict(self) -> Dict[str, Any]:
        return {
            'row_normalize': self.row_normalize,
            'restarts': self.restarts,
            'max_iters': self.max_iters,
            'view_strategy': self.view_strategy
        }


@dataclass
class GroundTruthEvents:
    """Annotated event intervals, inclusive frame bounds"""
    events: List[Tuple[int, int, str]]

    def __post_init__(self):
        for start, end, label in self.events:
            if start < 0 or end < start:
                raise InvalidInputError(f"malformed event interval [{start}, {end}]")
            if not label:
                raise InvalidInputError("event labels must be non-empty")

    def check_within(self, n_frames: int):
        for start, end, _ in self.events:
            if end >= n_frames:
                raise InvalidInputError(f"event [{start}, {end}] exceeds the {n_frames} source frames")

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'GroundTruthEvents':
        try:
            events = [(int(e['start']), int(e['end']), str(e['label'])) for e in data['events']]
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed ground-truth events: {e}")
        return cls(events)

    def to_dict(self) -> Dict[str, Any]:
        return {'events': [{'start': s, 'end': e, 'label': label} for s, e, label in self.events]}


@dataclass
class SummaryManifest:
    """Keyframe summary with full provenance"""
    n: int
    k: int
    c: int
    gamma: float
    sigma_per_view: List[float]
    weights: ViewWeights
    objective_trace: List[float]
    converged: bool
    iterations: int
    labels: List[int]
    representatives: Representatives
    seed: int
    tool_version: str
    frame_stride: int = 1
    source_frames: Optional[int] = None
    config: Dict[str, Any] = field(default_factory=dict)
    schema: int = 1

    def __post_init__(self):
        if len(self.labels) != self.n:
            raise InvalidInputError(f"{len(self.labels)} labels for {self.n} frames")
        if self.weights.k != self.k or len(self.sigma_per_view) != self.k:
            raise InvalidInputError("weights and bandwidths must have one entry per view")
        if len(self.representatives.entries) != self.c:
            raise InvalidInputError(f"{len(self.representatives.entries)} representatives for {self.c} clusters")
        if self.frame_stride < 1:
            raise InvalidInputError(f"frame stride must be >= 1, got {self.frame_stride}")
        if self.source_frames is None:
            if self.frame_stride != 1:
                raise InvalidInputError("a strided summary must record its source frame count")
            self.source_frames = self.n
        check_source_frames(self.n, self.frame_stride, self.source_frames)

    @property
    def summary_frames(self) -> List[int]:
        return self.representatives.frames

    def to_dict(self) -> Dict[str, Any]:
        """JSON layout; key order is fixed so serialization is byte-stable"""
        return {
            'schema': self.schema,
            'tool_version': self.tool_version,
            'n': self.n,
            'k': self.k,
            'c': self.c,
            'gamma': self.gamma,
            'sigma_per_view': [float(s) for s in self.sigma_per_view],
            'weights': self.weights.to_list(),
            'objective_trace': [float(v) for v in self.objective_trace],
            'converged': self.converged,
            'iterations': self.iterations,
            'labels': [int(label) for label in self.labels],
            'representatives': self.representatives.to_dict(),
            'seed': self.seed,
            'frame_stride': self.frame_stride,
            'source_frames': self.source_frames,
            'config': self.config
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'SummaryManifest':
        try:
            return cls(
                n=int(data['n']),
                k=int(data['k']),
                c=int(data['c']),
                gamma=float(data['gamma']),
                sigma_per_view=[float(s) for s in data['sigma_per_view']],
                weights=ViewWeights(data['weights']),
                objective_trace=[float(v) for v in data['objective_trace']],
                converged=bool(data.get('converged', True)),
                iterations=int(data.get('iterations', len(data['objective_trace']) - 1)),
                labels=[int(label) for label in data['labels']],
                representatives=Representatives([
                    (int(r['cluster']), int(r['frame']), int(r['view'])) for r in data['representatives']
                ]),
                seed=int(data['seed']),
                tool_version=str(data.get('tool_version', 'unknown')),
                frame_stride=int(data.get('frame_stride', 1)),
                source_frames=None if data.get('source_frames') is None else int(data['source_frames']),
                config=data.get('config', {}),
                schema=int(data.get('schema', 1))
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"malformed manifest: {e}")
