"""
Unsupervised multi-view metric learning.

The learned Laplacian is a convex combination of the per-view trace-normalized
Laplacians. The objective is the sum of its c smallest eigenvalues (structural
loss) plus gamma times its summed squared Frobenius distance to every view
(disagreement loss). It is minimized by alternating an eigendecomposition
(basis step) with an exact simplex-constrained quadratic program (weight step).
"""

import itertools
import logging
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .graph import eigendecompose, spectral_basis
from ..config.settings import settings
from ..models.data_models import (
    Laplacian,
    LaplacianBundle,
    OptimizerConfig,
    OptimizerResult,
    ViewWeights,
)
from ..models.exceptions import (
    DimensionError,
    InternalInvariantError,
    InvalidInputError,
    InvalidParameterError,
    UnsupportedSizeError,
)

logger = logging.getLogger(__name__)

MONOTONE_SLACK = 1e-9
TIE_ATOL = 1e-12
FEASIBILITY_ATOL = 1e-12
KKT_RCOND = 1e-10
KKT_RESIDUAL_ATOL = 1e-9
DEGENERATE_GAP = 1e-12


def combine(bundle: LaplacianBundle, mu: ViewWeights) -> Laplacian:
    """Convex combination sum_k mu_k L_k"""
    if mu.k != bundle.k:
        raise DimensionError(f"{mu.k} weights given for {bundle.k} views")
    combined = np.tensordot(mu.mu, bundle.stacked(), axes=1)
    return Laplacian(data=combined, trace_normalized=True)


def structural_loss(l: Laplacian, c: int) -> float:
    """Sum of the c smallest eigenvalues of a trace-normalized Laplacian"""
    if not l.trace_normalized:
        raise InvalidInputError("structural loss expects a trace-normalized Laplacian")
    if not 1 <= c < l.n:
        raise InvalidParameterError(f"need 1 <= c < n, got c={c}, n={l.n}")
    eigenvalues, _ = eigendecompose(l)
    return float(np.sum(eigenvalues[:c]))


def disagreement_loss(l: Laplacian, bundle: LaplacianBundle) -> float:
    """sum_k ||L - L_k||_F^2"""
    if l.data.shape != (bundle.n, bundle.n):
        raise DimensionError(f"Laplacian of shape {l.data.shape} compared with {bundle.n}-frame views")
    diffs = bundle.stacked() - l.data[None, :, :]
    return float(np.sum(diffs * diffs))


def objective(bundle: LaplacianBundle, mu: ViewWeights, c: int, gamma: float) -> float:
    """Structural loss plus gamma times disagreement loss of the combined Laplacian"""
    combined = combine(bundle, mu)
    return structural_loss(combined, c) + gamma * disagreement_loss(combined, bundle)


def qp_terms(bundle: LaplacianBundle, basis: np.ndarray, gamma: float) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    Reduce the weight step to  mu' A mu + b' mu + const.

    With Gram_{kl} = <L_k, L_l>:
        A = gamma * K * Gram
        b_k = tr(P' L_k P) - 2 gamma sum_i Gram_{ki}
        const = gamma * trace(Gram)
    """
    gram = bundle.gram()
    traces = np.array([np.trace(basis.T @ lap.data @ basis) for lap in bundle.laplacians])
    a = gamma * bundle.k * gram
    b = traces - 2.0 * gamma * gram.sum(axis=1)
    const = gamma * float(np.trace(gram))
    return a, b, const


def _qp_value(a: np.ndarray, b: np.ndarray, mu: np.ndarray) -> float:
    return float(mu @ a @ mu + b @ mu)


def _solve_support(a: np.ndarray, b: np.ndarray, support: Tuple[int, ...]) -> Optional[np.ndarray]:
    """
    Stationary point of the QP restricted to the affine hull of a face.

    Singular but consistent KKT systems yield their minimum-norm solution,
    which is the face minimizer closest to the face's barycentre; inconsistent
    systems mean the face holds no stationary point and return None.
    """
    s = len(support)
    idx = np.array(support)
    kkt = np.zeros((s + 1, s + 1))
    kkt[:s, :s] = 2.0 * a[np.ix_(idx, idx)]
    kkt[:s, s] = 1.0
    kkt[s, :s] = 1.0
    rhs = np.concatenate([-b[idx], [1.0]])

    solution, _, _, _ = np.linalg.lstsq(kkt, rhs, rcond=KKT_RCOND)
    residual = np.linalg.norm(kkt @ solution - rhs)
    if residual > KKT_RESIDUAL_ATOL * (1.0 + np.linalg.norm(rhs)):
        return None

    mu_s = solution[:s]
    if np.any(mu_s < -FEASIBILITY_ATOL):
        return None

    mu = np.zeros(a.shape[0])
    mu[idx] = np.clip(mu_s, 0.0, None)
    total = mu.sum()
    if total <= 0:
        return None
    return mu / total


def solve_weight_qp(bundle: LaplacianBundle, basis: np.ndarray, gamma: float) -> ViewWeights:
    """
    Exact minimizer over the simplex of
        sum_k mu_k tr(P' L_k P) + gamma sum_i ||sum_k mu_k L_k - L_i||_F^2

    Every non-empty support set is tried; the lowest objective wins and ties
    within 1e-12 go to the candidate closest to uniform weights.
    """
    k = bundle.k
    if k > settings.qp_max_views:
        raise UnsupportedSizeError(f"exact weight QP enumerates 2^K supports; K={k} exceeds {settings.qp_max_views}")
    if basis.shape[0] != bundle.n:
        raise DimensionError(f"basis has {basis.shape[0]} rows for {bundle.n}-frame views")

    a, b, _ = qp_terms(bundle, basis, gamma)
    uniform = np.full(k, 1.0 / k)

    candidates: List[Tuple[float, float, np.ndarray]] = []
    for size in range(1, k + 1):
        for support in itertools.combinations(range(k), size):
            mu = _solve_support(a, b, support)
            if mu is None:
                continue
            candidates.append((_qp_value(a, b, mu), float(np.linalg.norm(mu - uniform)), mu))

    # singleton supports always solve, so this cannot be empty
    best_value = min(value for value, _, _ in candidates)
    ties = [cand for cand in candidates if cand[0] <= best_value + TIE_ATOL]
    _, _, best = min(ties, key=lambda cand: cand[1])
    return ViewWeights(best)


def _iteration_diagnostics(combined: Laplacian, basis: np.ndarray, eigenvalues: np.ndarray, c: int) -> Dict[str, Any]:
    ky_fan = float(np.trace(basis.T @ combined.data @ basis))
    gap = float(eigenvalues[c] - eigenvalues[c - 1])
    return {
        'ky_fan_residual': abs(ky_fan - float(np.sum(eigenvalues[:c]))),
        'eigengap': gap,
        'degenerate_boundary': gap < DEGENERATE_GAP
    }


def alternate(bundle: LaplacianBundle, config: OptimizerConfig) -> OptimizerResult:
    """
    Alternating descent from uniform weights.

    Each iteration takes the basis of the current combination, then solves the
    weight QP for that basis. objective_trace[0] is the objective at uniform
    weights; one value is appended per iteration.
    """
    config.validate_for(bundle.n)
    c, gamma = config.c, config.gamma

    mu = ViewWeights.uniform(bundle.k)
    trace = [objective(bundle, mu, c, gamma)]
    diagnostics: List[Dict[str, Any]] = []
    converged = False
    iterations = 0

    for iterations in range(1, config.max_iters + 1):
        combined = combine(bundle, mu)
        basis, eigenvalues = spectral_basis(combined, c)
        diagnostics.append(_iteration_diagnostics(combined, basis, eigenvalues, c))

        mu = solve_weight_qp(bundle, basis, gamma)
        trace.append(objective(bundle, mu, c, gamma))

        if trace[-1] > trace[-2] + MONOTONE_SLACK:
            raise InternalInvariantError(
                f"objective increased from {trace[-2]:.12g} to {trace[-1]:.12g} at iteration {iterations}"
            )
        if abs(trace[-2] - trace[-1]) < config.tol:
            converged = True
            break

    combined = combine(bundle, mu)
    basis, eigenvalues = spectral_basis(combined, c)
    final = _iteration_diagnostics(combined, basis, eigenvalues, c)
    if final['degenerate_boundary']:
        logger.warning("eigenvalues %d and %d coincide (gap %.3e); basis choice follows decomposition order",
                       c - 1, c, final['eigengap'])

    logger.info("metric learning %s after %d iterations: objective %.10g, weights %s",
                "converged" if converged else "stopped", iterations, trace[-1],
                np.array2string(mu.mu, precision=4))

    return OptimizerResult(
        weights=mu,
        basis=basis,
        combined=combined,
        objective_trace=trace,
        converged=converged,
        iterations=iterations,
        diagnostics=diagnostics + [final]
    )


def fixed_weights(bundle: LaplacianBundle, mu: ViewWeights, config: OptimizerConfig) -> OptimizerResult:
    """Learned-metric outputs at user-fixed weights, without optimizing"""
    config.validate_for(bundle.n)
    combined = combine(bundle, mu)
    basis, eigenvalues = spectral_basis(combined, config.c)
    value = objective(bundle, mu, config.c, config.gamma)
    return OptimizerResult(
        weights=mu,
        basis=basis,
        combined=combined,
        objective_trace=[value],
        converged=True,
        iterations=0,
        diagnostics=[_iteration_diagnostics(combined, basis, eigenvalues, config.c)]
    )
