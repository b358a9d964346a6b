"""
Clustering in the learned metric space and keyframe selection.
"""

import logging
from typing import List, Sequence, Tuple

import numpy as np

from .graph import spectral_basis
from ..models.data_models import ClusterAssignment, KernelMatrix, Laplacian, SpectralEmbedding
from ..models.exceptions import ContractViolationError, InvalidParameterError

logger = logging.getLogger(__name__)

ZERO_ROW_NORM = 1e-12
VIEW_STRATEGIES = ("similarity", "first-view")


def embed(l: Laplacian, c: int, row_normalize: bool = True) -> SpectralEmbedding:
    """Rows of the c smallest eigenvectors, optionally scaled to unit length"""
    if not 2 <= c < l.n:
        raise InvalidParameterError(f"need 2 <= c < n for an embedding, got c={c}, n={l.n}")
    coords, _ = spectral_basis(l, c)
    coords = coords.copy()

    zero_rows: List[int] = []
    if row_normalize:
        norms = np.linalg.norm(coords, axis=1)
        zero = norms < ZERO_ROW_NORM
        zero_rows = np.flatnonzero(zero).tolist()
        coords[~zero] = coords[~zero] / norms[~zero, None]
        coords[zero] = 0.0
        if zero_rows:
            logger.warning("%d embedding rows are numerically zero and were left unnormalized", len(zero_rows))

    return SpectralEmbedding(coords=coords, row_normalized=row_normalize, zero_rows=zero_rows)


def _sq_dists_to(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = points[:, None, :] - centroids[None, :, :]
    return np.einsum('ijk,ijk->ij', diff, diff)


def kmeans_plusplus(points: np.ndarray, c: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: each new centre drawn with probability proportional to D^2"""
    n = points.shape[0]
    chosen = [int(rng.integers(0, n))]
    closest = _sq_dists_to(points, points[chosen]).min(axis=1)

    for _ in range(1, c):
        total = closest.sum()
        if total > 0:
            next_idx = int(rng.choice(n, p=closest / total))
        else:
            # every point coincides with a centre; fall back to unused indices
            unused = np.setdiff1d(np.arange(n), chosen)
            next_idx = int(rng.choice(unused))
        chosen.append(next_idx)
        closest = np.minimum(closest, _sq_dists_to(points, points[[next_idx]])[:, 0])

    return points[chosen].copy()


def _repair_empty(points: np.ndarray, labels: np.ndarray, centroids: np.ndarray, c: int) -> int:
    """Move the point farthest from its centroid into each empty cluster"""
    repaired = 0
    for cluster in range(c):
        if np.any(labels == cluster):
            continue
        counts = np.bincount(labels, minlength=c)
        own = np.einsum('ij,ij->i', points - centroids[labels], points - centroids[labels])
        own[counts[labels] <= 1] = -1.0
        donor = int(np.argmax(own))
        labels[donor] = cluster
        centroids[cluster] = points[donor]
        repaired += 1
    return repaired


def _inertia(points: np.ndarray, labels: np.ndarray, centroids: np.ndarray) -> float:
    diff = points - centroids[labels]
    return float(np.einsum('ij,ij->', diff, diff))


def lloyd(points: np.ndarray, centroids: np.ndarray, max_iters: int) -> Tuple[np.ndarray, np.ndarray, List[float]]:
    """
    Lloyd iterations from the given centres.

    Returns:
        (labels, centroids, inertia after every iteration)
    """
    c = centroids.shape[0]
    centroids = centroids.copy()
    labels = np.argmin(_sq_dists_to(points, centroids), axis=1)
    history: List[float] = []

    for _ in range(max_iters):
        if _repair_empty(points, labels, centroids, c):
            logger.debug("repaired empty clusters during Lloyd iteration")
        for cluster in range(c):
            centroids[cluster] = points[labels == cluster].mean(axis=0)
        history.append(_inertia(points, labels, centroids))

        new_labels = np.argmin(_sq_dists_to(points, centroids), axis=1)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels

    _repair_empty(points, labels, centroids, c)
    for cluster in range(c):
        centroids[cluster] = points[labels == cluster].mean(axis=0)
    return labels, centroids, history


def _canonical(labels: np.ndarray, centroids: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Renumber clusters in order of their first frame"""
    order = []
    for label in labels:
        if label not in order:
            order.append(int(label))
    mapping = np.empty(len(order), dtype=int)
    mapping[order] = np.arange(len(order))
    return mapping[labels], centroids[order]


def kmeans(e: SpectralEmbedding, c: int, restarts: int = 10, max_iters: int = 300, seed: int = 0) -> ClusterAssignment:
    """
    Best-of-restarts k-means with k-means++ seeding.

    Each restart draws from its own stream spawned from the seed, and the
    winner is chosen by (inertia, restart index), so results do not depend
    on execution order.
    """
    points = e.coords
    n = points.shape[0]
    if not 1 <= c <= n:
        raise InvalidParameterError(f"need 1 <= c <= n for k-means, got c={c}, n={n}")
    if restarts < 1:
        raise InvalidParameterError(f"restarts must be >= 1, got {restarts}")
    if max_iters < 1:
        raise InvalidParameterError(f"max_iters must be >= 1, got {max_iters}")

    streams = np.random.SeedSequence(seed).spawn(restarts)
    best = None
    for restart, stream in enumerate(streams):
        rng = np.random.default_rng(stream)
        labels, centroids, _ = lloyd(points, kmeans_plusplus(points, c, rng), max_iters)
        inertia = _inertia(points, labels, centroids)
        if best is None or inertia < best[0]:
            best = (inertia, restart, labels, centroids)

    inertia, restart, labels, centroids = best
    labels, centroids = _canonical(labels, centroids)
    logger.debug("k-means best restart %d of %d, inertia %.6g", restart, restarts, inertia)
    return ClusterAssignment(labels=labels, centroids=centroids, inertia=inertia)


def representatives(e: SpectralEmbedding, a: ClusterAssignment) -> List[Tuple[int, int]]:
    """
    For each cluster, the member frame nearest the cluster mean.

    Ties go to the lowest frame index. Returned sorted by frame index.
    """
    chosen = []
    for cluster in range(a.c):
        members = a.members(cluster)
        if members.size == 0:
            raise ContractViolationError(f"cluster {cluster} is empty")
        block = e.coords[members]
        centroid = block.mean(axis=0)
        dists = np.einsum('ij,ij->i', block - centroid, block - centroid)
        chosen.append((cluster, int(members[int(np.argmin(dists))])))
    return sorted(chosen, key=lambda entry: entry[1])


def select_view(frame_index: int, kernels: Sequence[KernelMatrix], member_indices: Sequence[int],
                strategy: str = "similarity") -> int:
    """
    Pick the view whose kernel makes the frame most similar to its cluster.

    'similarity' maximizes the mean kernel value between the frame and the
    cluster members; 'first-view' always returns view 0. Ties go to the
    lowest view id.
    """
    if strategy not in VIEW_STRATEGIES:
        raise InvalidParameterError(f"unknown view strategy '{strategy}'")
    members = np.asarray(member_indices, dtype=int)
    if members.size == 0:
        raise ContractViolationError("cannot select a view for an empty cluster")
    if frame_index not in set(members.tolist()):
        raise ContractViolationError(f"frame {frame_index} is not a member of its cluster")
    if strategy == "first-view" or len(kernels) == 1:
        return 0

    scores = np.array([kernel.data[frame_index, members].mean() for kernel in kernels])
    return int(np.argmax(scores))
