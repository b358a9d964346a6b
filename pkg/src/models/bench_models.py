"""
Data models for the synthetic multi-view benchmark.
"""

import math
from dataclasses import dataclass, replace
from typing import List, Dict, Any, Optional, Sequence, Tuple, Union

from .exceptions import InvalidParameterError


@dataclass(frozen=True)
class SynthConfig:
    """Latent-event generator settings"""
    n_clusters: int = 5
    points_per_cluster: int = 40
    latent_dim: int = 3
    n_views: int = 3
    noise_sigma: Union[float, Tuple[float, ...]] = 0.1
    corrupted_views: Tuple[int, ...] = ()
    cluster_separation: float = 10.0
    cluster_std: float = 1.0
    max_center_attempts: int = 10000
    seed: int = 0

    def __post_init__(self):
        if self.n_clusters < 2:
            raise InvalidParameterError(f"need at least 2 clusters, got {self.n_clusters}")
        if self.points_per_cluster < 1:
            raise InvalidParameterError("points_per_cluster must be >= 1")
        if self.latent_dim < 1:
            raise InvalidParameterError("latent_dim must be >= 1")
        if self.n_views < 1:
            raise InvalidParameterError(f"need at least 1 view, got {self.n_views}")
        object.__setattr__(self, 'corrupted_views', tuple(sorted(set(int(v) for v in self.corrupted_views))))
        if any(not 0 <= v < self.n_views for v in self.corrupted_views):
            raise InvalidParameterError(f"corrupted views {self.corrupted_views} outside [0, {self.n_views})")
        if isinstance(self.noise_sigma, (list, tuple)):
            object.__setattr__(self, 'noise_sigma', tuple(float(s) for s in self.noise_sigma))
            if len(self.noise_sigma) != self.n_views:
                raise InvalidParameterError("per-view noise_sigma needs one entry per view")
        if any(s < 0 for s in self.view_noise()):
            raise InvalidParameterError("noise_sigma must be >= 0")
        if not self.cluster_separation > 0:
            raise InvalidParameterError("cluster_separation must be > 0")
        if self.cluster_std < 0:
            raise InvalidParameterError("cluster_std must be >= 0")
        if self.max_center_attempts < 1:
            raise InvalidParameterError("max_center_attempts must be >= 1")

    @property
    def n(self) -> int:
        return self.n_clusters * self.points_per_cluster

    def view_noise(self) -> List[float]:
        if isinstance(self.noise_sigma, tuple):
            return list(self.noise_sigma)
        return [float(self.noise_sigma)] * self.n_views

    def with_seed(self, seed: int) -> 'SynthConfig':
        return replace(self, seed=seed)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'n_clusters': self.n_clusters,
            'points_per_cluster': self.points_per_cluster,
            'latent_dim': self.latent_dim,
            'n_views': self.n_views,
            'noise_sigma': self.view_noise(),
            'corrupted_views': list(self.corrupted_views),
            'cluster_separation': self.cluster_separation,
            'cluster_std': self.cluster_std,
            'max_center_attempts': self.max_center_attempts,
            'seed': self.seed
        }


@dataclass
class MethodStats:
    """Aggregate scores of one method over all successful seeds"""
    ari_mean: float
    ari_std: float
    nmi_mean: float
    nmi_std: float
    runtime_mean: float
    count: int

    def to_dict(self, include_timings: bool = False) -> Dict[str, Any]:
        data = {
            'ari_mean': _json_float(self.ari_mean),
            'ari_std': _json_float(self.ari_std),
            'nmi_mean': _json_float(self.nmi_mean),
            'nmi_std': _json_float(self.nmi_std),
            'count': self.count
        }
        if include_timings:
            data['runtime_mean_s'] = _json_float(self.runtime_mean)
        return data


@dataclass
class BenchReport:
    """Comparative results of the learned metric against its baselines"""
    methods: Dict[str, MethodStats]
    rows: List[Dict[str, Any]]
    weights: Dict[int, List[float]]
    failures: List[Dict[str, Any]]
    config: Dict[str, Any]
    seeds: List[int]
    corrupted_min_fraction: Optional[float] = None

    def to_dict(self, include_timings: bool = False) -> Dict[str, Any]:
        """Runtimes vary between runs, so they are left out unless asked for"""
        rows = self.rows if include_timings else [
            {key: value for key, value in row.items() if key != 'runtime_s'} for row in self.rows
        ]
        return {
            'config': self.config,
            'seeds': self.seeds,
            'methods': {name: stats.to_dict(include_timings) for name, stats in self.methods.items()},
            'weights': {str(seed): mu for seed, mu in sorted(self.weights.items())},
            'corrupted_min_fraction': self.corrupted_min_fraction,
            'failures': self.failures,
            'rows': rows
        }

    def method_names(self) -> List[str]:
        return list(self.methods)


def summarize_scores(values: Sequence[float]) -> Tuple[float, float]:
    """Mean and population standard deviation; NaN for an empty sequence"""
    if not values:
        return math.nan, math.nan
    mean = math.fsum(values) / len(values)
    var = math.fsum((v - mean) ** 2 for v in values) / len(values)
    return mean, math.sqrt(var)


def _json_float(value: float) -> Optional[float]:
    return None if math.isnan(value) else value
