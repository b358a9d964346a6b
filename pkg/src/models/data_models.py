"""
Data models for the multi-view metric learning core: feature matrices,
kernels, Laplacians, view weights and clustering results.
"""

from dataclasses import dataclass, field
from typing import List, Dict, Any, Optional, Tuple

import numpy as np

from .exceptions import InvalidInputError, InvalidParameterError, DimensionError


@dataclass(frozen=True)
class BandwidthPolicy:
    """RBF bandwidth selection: median pairwise distance, or a fixed sigma"""
    kind: str = "median"
    sigma: Optional[float] = None

    def __post_init__(self):
        if self.kind not in ("median", "fixed"):
            raise InvalidParameterError(f"unknown bandwidth policy '{self.kind}'")
        if self.kind == "fixed" and (self.sigma is None or not self.sigma > 0):
            raise InvalidParameterError("fixed bandwidth requires sigma > 0")

    @classmethod
    def median(cls) -> 'BandwidthPolicy':
        return cls("median")

    @classmethod
    def fixed(cls, sigma: float) -> 'BandwidthPolicy':
        return cls("fixed", float(sigma))

    @classmethod
    def parse(cls, text: str) -> 'BandwidthPolicy':
        """Parse 'median' or a positive float"""
        if text == "median":
            return cls.median()
        try:
            return cls.fixed(float(text))
        except ValueError:
            raise InvalidParameterError(f"bandwidth must be 'median' or a positive number, got '{text}'")

    def to_dict(self) -> Dict[str, Any]:
        return {'kind': self.kind, 'sigma': self.sigma}


@dataclass
class FeatureMatrix:
    """One view's frame features, one row per frame"""
    data: np.ndarray

    def __post_init__(self):
        self.data = np.asarray(self.data, dtype=float)
        if self.data.ndim == 1:
            self.data = self.data.reshape(-1, 1)
        if self.data.ndim != 2:
            raise InvalidInputError("feature matrix must be two-dimensional")
        if self.n < 2 or self.d < 1:
            raise InvalidInputError(f"feature matrix needs n >= 2 and d >= 1, got {self.data.shape}")
        if not np.all(np.isfinite(self.data)):
            raise InvalidInputError("feature matrix contains non-finite entries")

    @property
    def n(self) -> int:
        return self.data.shape[0]

    @property
    def d(self) -> int:
        return self.data.shape[1]


@dataclass
class KernelMatrix:
    """Symmetric RBF similarity matrix and the bandwidth that produced it"""
    data: np.ndarray
    sigma: float

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def degrees(self) -> np.ndarray:
        return self.data.sum(axis=1)


@dataclass
class Laplacian:
    """Symmetric normalized Laplacian, optionally scaled to unit trace"""
    data: np.ndarray
    trace_normalized: bool = False

    @property
    def n(self) -> int:
        return self.data.shape[0]

    def trace(self) -> float:
        return float(np.trace(self.data))


@dataclass
class LaplacianBundle:
    """The K per-view trace-normalized Laplacians, all n x n"""
    laplacians: List[Laplacian]

    def __post_init__(self):
        if not self.laplacians:
            raise InvalidInputError("a Laplacian bundle needs at least one view")
        n = self.laplacians[0].n
        for k, lap in enumerate(self.laplacians):
            if lap.data.shape != (n, n):
                raise DimensionError(f"view {k} Laplacian has shape {lap.data.shape}, expected {(n, n)}")
            if not lap.trace_normalized:
                raise InvalidInputError(f"view {k} Laplacian is not trace-normalized")

    @property
    def k(self) -> int:
        return len(self.laplacians)

    @property
    def n(self) -> int:
        return self.laplacians[0].n

    def stacked(self) -> np.ndarray:
        """K x n x n array of the member matrices"""
        return np.stack([lap.data for lap in self.laplacians])

    def gram(self) -> np.ndarray:
        """Frobenius inner products <L_k, L_l>"""
        flat = self.stacked().reshape(self.k, -1)
        return flat @ flat.T


@dataclass
class ViewWeights:
    """Convex combination weights over the K views"""
    mu: np.ndarray

    def __post_init__(self):
        self.mu = np.asarray(self.mu, dtype=float).ravel()
        if self.mu.size == 0:
            raise InvalidInputError("view weights cannot be empty")
        if np.any(self.mu < 0) or abs(self.mu.sum() - 1.0) > 1e-12:
            raise InvalidInputError(f"view weights must lie on the simplex, got {self.mu.tolist()}")

    @classmethod
    def uniform(cls, k: int) -> 'ViewWeights':
        return cls(np.full(k, 1.0 / k))

    @property
    def k(self) -> int:
        return self.mu.size

    def to_list(self) -> List[float]:
        return [float(w) for w in self.mu]


@dataclass(frozen=True)
class OptimizerConfig:
    """Parameters of the alternating metric learning solver"""
    c: int
    gamma: float = 1.0
    max_iters: int = 100
    tol: float = 1e-8
    seed: int = 0

    def __post_init__(self):
        if self.c < 2:
            raise InvalidParameterError(f"cluster count must be >= 2, got {self.c}")
        if self.gamma < 0:
            raise InvalidParameterError(f"gamma must be >= 0, got {self.gamma}")
        if self.max_iters < 1:
            raise InvalidParameterError(f"max_iters must be >= 1, got {self.max_iters}")
        if not self.tol > 0:
            raise InvalidParameterError(f"tol must be > 0, got {self.tol}")

    def validate_for(self, n: int):
        if self.c >= n:
            raise InvalidParameterError(f"cluster count {self.c} must be smaller than frame count {n}")

    def to_dict(self) -> Dict[str, Any]:
        return {
            'c': self.c,
            'gamma': self.gamma,
            'max_iters': self.max_iters,
            'tol': self.tol,
            'seed': self.seed
        }


@dataclass
class OptimizerResult:
    """Output of the alternating solver"""
    weights: ViewWeights
    basis: np.ndarray
    combined: Laplacian
    objective_trace: List[float]
    converged: bool
    iterations: int
    diagnostics: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def degenerate_boundary(self) -> bool:
        return any(d.get('degenerate_boundary', False) for d in self.diagnostics)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'weights': self.weights.to_list(),
            'objective_trace': [float(v) for v in self.objective_trace],
            'converged': self.converged,
            'iterations': self.iterations,
            'degenerate_boundary': self.degenerate_boundary
        }


@dataclass
class SpectralEmbedding:
    """Frames as rows of the learned c-dimensional metric space"""
    coords: np.ndarray
    row_normalized: bool
    zero_rows: List[int] = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.coords.shape[0]


@dataclass
class ClusterAssignment:
    """k-means labels, centroids and within-cluster sum of squares"""
    labels: np.ndarray
    centroids: np.ndarray
    inertia: float

    @property
    def c(self) -> int:
        return self.centroids.shape[0]

    def members(self, cluster_id: int) -> np.ndarray:
        return np.flatnonzero(self.labels == cluster_id)


@dataclass
class Representatives:
    """One (cluster, frame, view) entry per cluster, ordered by frame"""
    entries: List[Tuple[int, int, int]]

    def __post_init__(self):
        self.entries = sorted(self.entries, key=lambda e: e[1])

    @property
    def frames(self) -> List[int]:
        return [frame for _, frame, _ in self.entries]

    def to_dict(self) -> List[Dict[str, int]]:
        return [
            {'cluster': int(cluster), 'frame': int(frame), 'view': int(view)}
            for cluster, frame, view in self.entries
        ]
