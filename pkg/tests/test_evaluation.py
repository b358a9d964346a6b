import pytest

from src.models.exceptions import DimensionError, InvalidInputError, InvalidParameterError, UndefinedMetricError
from src.models.summary_models import GroundTruthEvents
from src.services.evaluation import (
    baseline_scores,
    eval_clustering,
    eval_event_pr,
    event_precision_recall,
    random_summary,
    uniform_summary,
)

TWO_EVENTS = GroundTruthEvents([(0, 10, "entry"), (20, 30, "exit")])


class TestEventPrecisionRecall:
    def test_worked_example(self):
        precision, recall = event_precision_recall([5, 15, 25], TWO_EVENTS)
        assert precision == pytest.approx(2 / 3)
        assert recall == 1.0

    def test_bounds_are_inclusive(self):
        assert event_precision_recall([10, 20], TWO_EVENTS) == (1.0, 1.0)

    def test_missed_event(self):
        assert event_precision_recall([1, 2], TWO_EVENTS) == (1.0, 0.5)

    def test_empty_summary(self):
        with pytest.raises(UndefinedMetricError):
            event_precision_recall([], TWO_EVENTS)

    def test_no_events(self):
        with pytest.raises(UndefinedMetricError):
            event_precision_recall([1], GroundTruthEvents([]))

    def test_manifest_frames(self, manifest):
        precision, recall = eval_event_pr(manifest, TWO_EVENTS)
        assert precision == pytest.approx(0.6667, abs=1e-4)
        assert recall == 1.0

    def test_events_beyond_the_video(self, manifest):
        with pytest.raises(InvalidInputError):
            eval_event_pr(manifest, GroundTruthEvents([(30, 45, "late")]))


class TestClusteringAgreement:
    def test_identical(self):
        ari, nmi = eval_clustering([0, 0, 1, 2], [0, 0, 1, 2])
        assert ari == 1.0
        assert nmi == pytest.approx(1.0)

    def test_renamed_clusters(self):
        ari, nmi = eval_clustering([2, 2, 0, 1], [0, 0, 1, 2])
        assert ari == 1.0
        assert nmi == pytest.approx(1.0)

    def test_crossed_pairs(self):
        ari, _ = eval_clustering([0, 1, 0, 1], [0, 0, 1, 1])
        assert ari == pytest.approx(-0.5)

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            eval_clustering([0, 1], [0, 1, 1])


class TestBaselines:
    def test_uniform_segment_centres(self):
        assert uniform_summary(40, 3) == [6, 20, 33]
        assert uniform_summary(5, 5) == [0, 1, 2, 3, 4]

    def test_random_is_seeded(self):
        frames = random_summary(100, 7, seed=3)
        assert frames == random_summary(100, 7, seed=3)
        assert frames == sorted(set(frames))
        assert len(frames) == 7

    def test_length_range(self):
        with pytest.raises(InvalidParameterError):
            uniform_summary(4, 5)
        with pytest.raises(InvalidParameterError):
            random_summary(4, 0)

    def test_scores_for_manifest(self, manifest):
        scores = baseline_scores(manifest, TWO_EVENTS)
        assert set(scores) == {'uniform', 'random'}
        assert scores['uniform']['frames'] == [6, 20, 33]
        assert scores['uniform']['precision'] == pytest.approx(2 / 3)
        assert 0.0 <= scores['random']['recall'] <= 1.0
