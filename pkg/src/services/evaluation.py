"""
Evaluation of keyframe summaries and clusterings.
"""

from typing import Any, Dict, List, Sequence, Tuple

import numpy as np
from sklearn.metrics import adjusted_rand_score, normalized_mutual_info_score

from ..models.exceptions import DimensionError, InvalidParameterError, UndefinedMetricError
from ..models.summary_models import GroundTruthEvents, SummaryManifest


def event_precision_recall(frames: Sequence[int], gt: GroundTruthEvents) -> Tuple[float, float]:
    """
    Precision: share of summary frames that fall inside at least one event.
    Recall: share of events that contain at least one summary frame.
    Event bounds are inclusive.
    """
    if len(frames) == 0:
        raise UndefinedMetricError("precision is undefined for an empty summary")
    if not gt.events:
        raise UndefinedMetricError("recall is undefined without ground-truth events")

    frames = np.asarray(frames, dtype=int)
    hits = np.zeros((len(gt.events), frames.size), dtype=bool)
    for i, (start, end, _) in enumerate(gt.events):
        hits[i] = (frames >= start) & (frames <= end)

    precision = float(hits.any(axis=0).mean())
    recall = float(hits.any(axis=1).mean())
    return precision, recall


def eval_event_pr(manifest: SummaryManifest, gt: GroundTruthEvents) -> Tuple[float, float]:
    """Event precision and recall of a manifest's keyframes"""
    gt.check_within(manifest.source_frames)
    return event_precision_recall(manifest.summary_frames, gt)


def eval_clustering(labels: Sequence[int], truth: Sequence[int]) -> Tuple[float, float]:
    """Adjusted Rand Index and NMI (arithmetic-mean normalization)"""
    if len(labels) != len(truth):
        raise DimensionError(f"{len(labels)} predicted labels vs {len(truth)} true labels")
    ari = adjusted_rand_score(truth, labels)
    nmi = normalized_mutual_info_score(truth, labels, average_method="arithmetic")
    return float(ari), float(nmi)


def uniform_summary(n_frames: int, length: int) -> List[int]:
    """Evenly spaced keyframes: the centre of each of `length` equal segments"""
    if not 1 <= length <= n_frames:
        raise InvalidParameterError(f"summary length must be in [1, {n_frames}], got {length}")
    edges = np.linspace(0, n_frames, length + 1)
    return [int(f) for f in np.floor((edges[:-1] + edges[1:]) / 2)]


def random_summary(n_frames: int, length: int, seed: int = 0) -> List[int]:
    """`length` distinct frames drawn uniformly at random, sorted"""
    if not 1 <= length <= n_frames:
        raise InvalidParameterError(f"summary length must be in [1, {n_frames}], got {length}")
    rng = np.random.default_rng(seed)
    return sorted(int(f) for f in rng.choice(n_frames, size=length, replace=False))


def baseline_scores(manifest: SummaryManifest, gt: GroundTruthEvents) -> Dict[str, Dict[str, Any]]:
    """Precision/recall of same-length uniform and random summaries"""
    gt.check_within(manifest.source_frames)
    length = len(manifest.summary_frames)
    scores = {}
    for name, frames in (
        ('uniform', uniform_summary(manifest.source_frames, length)),
        ('random', random_summary(manifest.source_frames, length, manifest.seed)),
    ):
        precision, recall = event_precision_recall(frames, gt)
        scores[name] = {'precision': precision, 'recall': recall, 'frames': frames}
    return scores
