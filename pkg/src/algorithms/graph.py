"""
Similarity graphs over frames: RBF kernels and normalized Laplacians.
"""

import logging
from typing import Tuple

import numpy as np
import scipy.linalg
from scipy.spatial.distance import pdist, squareform

from ..models.data_models import BandwidthPolicy, FeatureMatrix, KernelMatrix, Laplacian
from ..models.exceptions import (
    ContractViolationError,
    DegenerateDataError,
    DegenerateLaplacianError,
    InvalidInputError,
    InvalidKernelError,
    InvalidParameterError,
)

logger = logging.getLogger(__name__)

DEGENERATE_TRACE = 1e-14
SYMMETRY_ATOL = 1e-12


def pairwise_sq_dists(x: FeatureMatrix) -> np.ndarray:
    """
    Squared Euclidean distances between all pairs of frames.

    Differences are taken explicitly (no Gram-matrix expansion), so the result
    is exactly symmetric, has a zero diagonal, and is invariant under rigid
    motions up to round-off in the differences themselves.
    """
    if not np.all(np.isfinite(x.data)):
        raise InvalidInputError("feature matrix contains non-finite entries")
    return squareform(pdist(x.data, metric="sqeuclidean"))


def median_bandwidth(x: FeatureMatrix) -> float:
    """Median of the n(n-1)/2 off-diagonal pairwise distances"""
    sigma = float(np.median(pdist(x.data, metric="euclidean")))
    if sigma <= 0:
        raise DegenerateDataError("median pairwise distance is zero; the view has no usable geometry")
    return sigma


def rbf_kernel(x: FeatureMatrix, policy: BandwidthPolicy = BandwidthPolicy.median()) -> KernelMatrix:
    """
    RBF similarity G(i,j) = exp(-||x_i - x_j||^2 / (2 sigma^2)).

    Args:
        x: Frame features of one view
        policy: 'median' picks sigma per view, 'fixed' uses policy.sigma

    Returns:
        KernelMatrix with unit diagonal and the sigma used
    """
    if policy.kind == "median":
        sigma = median_bandwidth(x)
    else:
        sigma = float(policy.sigma)
        if not sigma > 0:
            raise InvalidParameterError(f"sigma must be positive, got {sigma}")

    sq = pairwise_sq_dists(x)
    g = np.exp(-sq / (2.0 * sigma * sigma))
    return KernelMatrix(data=g, sigma=sigma)


def normalized_laplacian(g: KernelMatrix) -> Laplacian:
    """L = I - D^{-1/2} G D^{-1/2}, symmetrized to remove round-off asymmetry"""
    deg = g.degrees()
    if np.any(deg <= 0) or not np.all(np.isfinite(deg)):
        raise InvalidKernelError("kernel has a vertex with non-positive degree")

    inv_sqrt = 1.0 / np.sqrt(deg)
    lap = np.eye(g.n) - inv_sqrt[:, None] * g.data * inv_sqrt[None, :]
    lap = (lap + lap.T) / 2.0
    return Laplacian(data=lap, trace_normalized=False)


def trace_normalize(l: Laplacian) -> Laplacian:
    """Scale a Laplacian to unit trace; eigenvectors are unchanged"""
    tr = l.trace()
    if tr <= DEGENERATE_TRACE:
        raise DegenerateLaplacianError(f"Laplacian trace {tr:.3e} is numerically zero")
    if tr == 1.0:
        return Laplacian(data=l.data.copy(), trace_normalized=True)
    return Laplacian(data=l.data / tr, trace_normalized=True)


def build_view_laplacian(x: FeatureMatrix, policy: BandwidthPolicy) -> Tuple[KernelMatrix, Laplacian]:
    """Kernel and trace-normalized Laplacian of one view"""
    kernel = rbf_kernel(x, policy)
    lap = trace_normalize(normalized_laplacian(kernel))
    logger.debug("view graph built: n=%d sigma=%.6g", x.n, kernel.sigma)
    return kernel, lap


def check_symmetric(m: np.ndarray):
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractViolationError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    if not np.allclose(m, m.T, rtol=0.0, atol=SYMMETRY_ATOL * scale):
        raise ContractViolationError("matrix is not symmetric")


def eigendecompose(l: Laplacian) -> Tuple[np.ndarray, np.ndarray]:
    """
    Full symmetric eigendecomposition.

    Returns:
        (eigenvalues ascending, eigenvectors as columns); each column's
        largest-magnitude entry is made positive so the result is deterministic.
    """
    check_symmetric(l.data)
    eigenvalues, vectors = scipy.linalg.eigh(l.data)
    pivots = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[pivots, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return eigenvalues, vectors * signs


def spectral_basis(l: Laplacian, c: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Orthonormal eigenvectors of the c smallest eigenvalues.

    Returns:
        (P as an n x c matrix, all n eigenvalues ascending)
    """
    if not 1 <= c < l.n:
        raise InvalidParameterError(f"need 1 <= c < n, got c={c}, n={l.n}")
    eigenvalues, vectors = eigendecompose(l)
    return vectors[:, :c], eigenvalues
