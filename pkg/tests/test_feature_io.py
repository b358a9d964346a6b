import json
from dataclasses import replace

import numpy as np
import pytest

from src.models.data_models import BandwidthPolicy, FeatureMatrix
from src.models.exceptions import DataError, InvalidInputError, ParseError, SynchronizationError
from src.models.summary_models import DatasetSpec, GroundTruthEvents, ViewSet
from src.utils.feature_io import (
    load_feature_csv,
    load_ground_truth,
    load_labels,
    load_views,
    read_json,
    read_manifest,
    write_feature_csv,
    write_manifest,
)


def write(path, text):
    path.write_text(text)
    return str(path)


class TestFeatureCsv:
    def test_header_detected(self, tmp_path):
        data = load_feature_csv(write(tmp_path / "v.csv", "a,b\n1,2\n3,4.5\n"))
        np.testing.assert_array_equal(data, [[1, 2], [3, 4.5]])

    def test_headerless(self, tmp_path):
        data = load_feature_csv(write(tmp_path / "v.csv", "1,2\n3,4\n5,6\n"))
        assert data.shape == (3, 2)

    def test_written_file_reads_back(self, tmp_path, rng):
        data = rng.normal(size=(7, 3))
        write_feature_csv(data, tmp_path / "v.csv")
        np.testing.assert_array_equal(load_feature_csv(tmp_path / "v.csv"), data)

    def test_non_numeric_cell_location(self, tmp_path):
        with pytest.raises(ParseError) as info:
            load_feature_csv(write(tmp_path / "v.csv", "x,y\n1,2\n3,oops\n"))
        assert info.value.row == 3
        assert info.value.column == 2
        assert "row 3" in str(info.value)

    def test_non_finite_cell(self, tmp_path):
        with pytest.raises(ParseError):
            load_feature_csv(write(tmp_path / "v.csv", "1,2\n3,nan\n"))

    def test_ragged_rows(self, tmp_path):
        with pytest.raises(ParseError) as info:
            load_feature_csv(write(tmp_path / "v.csv", "1,2\n3\n"))
        assert info.value.row == 2

    def test_empty_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_feature_csv(write(tmp_path / "v.csv", ""))

    def test_single_frame(self, tmp_path):
        with pytest.raises(ParseError):
            load_feature_csv(write(tmp_path / "v.csv", "a\n1\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            load_feature_csv(tmp_path / "absent.csv")


class TestLoadViews:
    def test_frame_counts_must_match(self, tmp_path):
        a = write(tmp_path / "a.csv", "1\n2\n3\n")
        b = write(tmp_path / "b.csv", "1\n2\n")
        with pytest.raises(SynchronizationError):
            load_views(DatasetSpec([a, b]))

    def test_stride_keeps_every_sth_frame(self, tmp_path):
        a = write(tmp_path / "a.csv", "\n".join(str(i) for i in range(10)) + "\n")
        loaded = load_views(DatasetSpec([a], frame_stride=3))
        np.testing.assert_array_equal(loaded.views[0].data[:, 0], [0, 3, 6, 9])
        assert loaded.n == 4
        assert loaded.source_frames == 10

    def test_unstrided_source_frames(self, tmp_path):
        a = write(tmp_path / "a.csv", "1\n2\n3\n")
        loaded = load_views(DatasetSpec([a]))
        assert (loaded.n, loaded.source_frames, loaded.frame_stride) == (3, 3, 1)

    def test_views_may_differ_in_width(self, tmp_path):
        a = write(tmp_path / "a.csv", "1,2\n3,4\n")
        b = write(tmp_path / "b.csv", "1\n2\n")
        loaded = load_views(DatasetSpec([a, b]))
        assert [v.d for v in loaded.views] == [2, 1]
        assert loaded.k == 2

    def test_source_frames_must_match_stride(self):
        views = [FeatureMatrix(np.arange(4.0))]
        assert ViewSet(views, source_frames=12, frame_stride=3).n == 4
        with pytest.raises(InvalidInputError):
            ViewSet(views, source_frames=13, frame_stride=3)
        with pytest.raises(InvalidInputError):
            ViewSet(views, source_frames=9, frame_stride=3)

    def test_spec_validation(self):
        with pytest.raises(InvalidInputError):
            DatasetSpec([])
        with pytest.raises(InvalidInputError):
            DatasetSpec(["a.csv", "a.csv"])
        with pytest.raises(InvalidInputError):
            DatasetSpec(["a.csv"], frame_stride=0)
        assert DatasetSpec(["a.csv"], BandwidthPolicy.fixed(2.0)).to_dict()['bandwidth'] == {
            'kind': 'fixed', 'sigma': 2.0}


class TestJsonFormats:
    def test_ground_truth(self, tmp_path):
        path = tmp_path / "gt.json"
        path.write_text(json.dumps({"events": [{"start": 0, "end": 10, "label": "a"}]}))
        assert load_ground_truth(path).events == [(0, 10, "a")]

    def test_ground_truth_missing_fields(self, tmp_path):
        path = tmp_path / "gt.json"
        path.write_text(json.dumps({"events": [{"start": 0}]}))
        with pytest.raises(ParseError):
            load_ground_truth(path)

    def test_inverted_event(self):
        with pytest.raises(InvalidInputError):
            GroundTruthEvents([(5, 2, "x")])

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{\n  \"events\": [\n")
        with pytest.raises(ParseError) as info:
            read_json(path)
        assert info.value.row is not None

    def test_manifest_file(self, tmp_path, manifest):
        path = tmp_path / "m.json"
        text = write_manifest(manifest, path)
        assert path.read_text() == text
        assert read_manifest(path).to_dict() == manifest.to_dict()

    def test_strided_manifest_keeps_source_frames(self, tmp_path, manifest):
        strided = replace(manifest, frame_stride=3, source_frames=119)
        path = tmp_path / "m.json"
        write_manifest(strided, path)
        assert read_manifest(path).source_frames == 119

    def test_manifest_source_frames_checked(self, manifest):
        with pytest.raises(InvalidInputError):
            replace(manifest, frame_stride=3, source_frames=121)
        with pytest.raises(InvalidInputError):
            replace(manifest, frame_stride=3, source_frames=None)

    def test_manifest_missing_keys(self, tmp_path):
        path = tmp_path / "m.json"
        path.write_text(json.dumps({"schema": 1, "n": 3}))
        with pytest.raises(ParseError):
            read_manifest(path)


class TestLabels:
    def test_json_list(self, tmp_path):
        path = tmp_path / "labels.json"
        path.write_text("[0, 1, 1, 2]")
        assert load_labels(path) == [0, 1, 1, 2]

    def test_json_object(self, tmp_path):
        path = tmp_path / "labels.json"
        path.write_text('{"labels": [2, 2, 0]}')
        assert load_labels(path) == [2, 2, 0]

    def test_one_per_line(self, tmp_path):
        path = tmp_path / "labels.txt"
        path.write_text("0\n1\n\n1\n")
        assert load_labels(path) == [0, 1, 1]

    def test_bad_line(self, tmp_path):
        path = tmp_path / "labels.txt"
        path.write_text("0\nx\n")
        with pytest.raises(ParseError) as info:
            load_labels(path)
        assert info.value.row == 2
