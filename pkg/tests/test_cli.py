import csv
import json

import pytest

from src.cli.commands import build_parser, main
from src.config.settings import parse_int_setting, settings
from src.models.exceptions import InvalidParameterError
from src.utils.feature_io import write_manifest


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def events_file(tmp_path):
    path = tmp_path / "events.json"
    path.write_text(json.dumps({"events": [
        {"start": 0, "end": 10, "label": "entry"},
        {"start": 20, "end": 30, "label": "exit"},
    ]}))
    return str(path)


@pytest.fixture
def manifest_file(tmp_path, manifest):
    path = tmp_path / "summary.json"
    write_manifest(manifest, path)
    return str(path)


class TestSummarizeCommand:
    def test_writes_manifest(self, view_files, tmp_path, capsys):
        paths, _ = view_files(n_views=2)
        out = tmp_path / "m.json"
        code, stdout, _ = run(["summarize", "--view", paths[0], "--view", paths[1], "--clusters", "3",
                               "--gamma", "1.0", "--seed", "7", "--out", str(out)], capsys)
        assert code == 0
        assert stdout == ""
        manifest = json.loads(out.read_text())
        assert manifest['schema'] == 1
        assert manifest['seed'] == 7
        assert len(manifest['representatives']) == 3
        assert manifest['config']['clustering']['restarts'] == 10
        assert manifest['config']['dataset']['bandwidth'] == {'kind': 'median', 'sigma': None}

    def test_identical_flags_identical_bytes(self, view_files, tmp_path, capsys):
        paths, _ = view_files(n_views=2, seed=3)
        outputs = []
        for name in ("first.json", "second.json"):
            out = tmp_path / name
            assert run(["summarize", "--view", paths[0], "--view", paths[1], "--clusters", "3",
                        "--seed", "11", "--out", str(out)], capsys)[0] == 0
            outputs.append(out.read_bytes())
        assert outputs[0] == outputs[1]

    def test_stdout_is_json(self, view_files, capsys):
        paths, _ = view_files(n_views=1)
        code, stdout, _ = run(["summarize", "--view", paths[0], "--clusters", "3"], capsys)
        assert code == 0
        assert json.loads(stdout)['k'] == 1

    def test_seed_from_environment(self, view_files, monkeypatch, capsys):
        paths, _ = view_files(n_views=1)
        monkeypatch.setenv("MVML_SEED", "5")
        code, stdout, _ = run(["summarize", "--view", paths[0], "--clusters", "2"], capsys)
        assert code == 0
        assert json.loads(stdout)['seed'] == 5

    def test_malformed_seed_environment(self, view_files, monkeypatch, capsys):
        paths, _ = view_files(n_views=1)
        monkeypatch.setenv("MVML_SEED", "abc")
        code, stdout, stderr = run(["summarize", "--view", paths[0], "--clusters", "2"], capsys)
        assert code == 1
        assert stdout == ""
        assert "MVML_SEED" in stderr
        assert "Traceback" not in stderr

    def test_malformed_frame_limit(self, view_files, monkeypatch, capsys):
        paths, _ = view_files(n_views=1)
        monkeypatch.setattr(settings, "raw_max_frames_warning", "lots")
        code, _, stderr = run(["summarize", "--view", paths[0], "--clusters", "2"], capsys)
        assert code == 1
        assert "MVML_MAX_FRAMES" in stderr

    def test_verbose_tables_go_to_stderr(self, view_files, capsys):
        paths, _ = view_files(n_views=2)
        code, stdout, stderr = run(["summarize", "--view", paths[0], "--view", paths[1],
                                    "--clusters", "3", "--verbose"], capsys)
        assert code == 0
        json.loads(stdout)
        assert "view weights" in stderr
        assert "keyframes" in stderr

    def test_missing_view_is_usage_error(self, capsys):
        code, _, stderr = run(["summarize", "--clusters", "3"], capsys)
        assert code == 1
        assert "usage" in stderr

    def test_unknown_subcommand(self, capsys):
        assert run(["transcode"], capsys)[0] == 1

    def test_single_cluster_rejected(self, view_files, capsys):
        paths, _ = view_files(n_views=1)
        assert run(["summarize", "--view", paths[0], "--clusters", "1"], capsys)[0] == 1

    def test_mismatched_rows(self, tmp_path, capsys):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        a.write_text("1\n2\n3\n4\n")
        b.write_text("1\n2\n3\n")
        code, _, stderr = run(["summarize", "--view", str(a), "--view", str(b), "--clusters", "2"], capsys)
        assert code == 2
        assert "ingest" in stderr
        assert "Traceback" not in stderr

    def test_unparseable_features(self, tmp_path, capsys):
        a = tmp_path / "a.csv"
        a.write_text("1,2\n3,x\n5,6\n")
        code, _, stderr = run(["summarize", "--view", str(a), "--clusters", "2"], capsys)
        assert code == 2
        assert "row 2" in stderr

    def test_numerical_failure_names_stage(self, tmp_path, capsys):
        flat = tmp_path / "flat.csv"
        flat.write_text("1\n1\n1\n1\n")
        code, _, stderr = run(["summarize", "--view", str(flat), "--clusters", "2"], capsys)
        assert code == 3
        assert "graph" in stderr


class TestLearnMetricCommand:
    def test_duplicated_views_share_weight(self, view_files, tmp_path, capsys):
        paths, _ = view_files(n_views=1)
        copy = tmp_path / "copy.csv"
        copy.write_text(open(paths[0]).read())
        code, stdout, _ = run(["learn-metric", "--view", paths[0], "--view", str(copy), "--clusters", "3"], capsys)
        assert code == 0
        report = json.loads(stdout)
        assert report['weights'] == pytest.approx([0.5, 0.5], abs=1e-12)
        assert 'labels' not in report

    def test_iteration_bound(self, view_files, capsys):
        paths, _ = view_files(n_views=3, corrupted=[0])
        code, stdout, _ = run(["learn-metric", "--view", paths[0], "--view", paths[1], "--view", paths[2],
                               "--clusters", "3", "--max-iters", "1"], capsys)
        assert code == 0
        assert len(json.loads(stdout)['objective_trace']) <= 2

    def test_gamma_passthrough(self, view_files, capsys):
        paths, _ = view_files(n_views=2)
        code, stdout, _ = run(["learn-metric", "--view", paths[0], "--view", paths[1],
                               "--clusters", "3", "--gamma", "0"], capsys)
        assert code == 0
        report = json.loads(stdout)
        assert report['gamma'] == 0.0
        assert report['config']['optimizer']['gamma'] == 0.0


class TestEvalCommand:
    def test_worked_fixture(self, manifest_file, events_file, capsys):
        code, stdout, _ = run(["eval", "--manifest", manifest_file, "--events", events_file], capsys)
        assert code == 0
        result = json.loads(stdout)
        assert result['precision'] == pytest.approx(0.6667, abs=1e-4)
        assert result['recall'] == 1.0

    def test_empty_events(self, manifest_file, tmp_path, capsys):
        empty = tmp_path / "none.json"
        empty.write_text('{"events": []}')
        assert run(["eval", "--manifest", manifest_file, "--events", str(empty)], capsys)[0] == 1

    def test_labels(self, manifest_file, manifest, tmp_path, capsys):
        labels = tmp_path / "labels.json"
        labels.write_text(json.dumps(manifest.labels))
        code, stdout, _ = run(["eval", "--manifest", manifest_file, "--labels", str(labels)], capsys)
        assert code == 0
        assert json.loads(stdout)['ari'] == 1.0

    def test_baselines(self, manifest_file, events_file, capsys):
        code, stdout, _ = run(["eval", "--manifest", manifest_file, "--events", events_file, "--baselines"],
                              capsys)
        assert code == 0
        assert set(json.loads(stdout)['baselines']) == {'uniform', 'random'}

    def test_needs_something_to_score(self, manifest_file, capsys):
        assert run(["eval", "--manifest", manifest_file], capsys)[0] == 1

    def test_missing_manifest(self, tmp_path, events_file, capsys):
        code = run(["eval", "--manifest", str(tmp_path / "none.json"), "--events", events_file], capsys)[0]
        assert code == 2


class TestBenchCommand:
    ARGS = ["bench", "--views", "3", "--clusters", "3", "--points-per-cluster", "10", "--corrupt", "2"]

    def test_report(self, tmp_path, capsys):
        out = tmp_path / "bench.json"
        code, _, _ = run(self.ARGS + ["--seeds", "2", "--out", str(out)], capsys)
        assert code == 0
        report = json.loads(out.read_text())
        assert set(report['methods']) == {"ours", "uniform", "view-0", "view-1", "view-2", "concatenated"}
        assert report['seeds'] == [0, 1]
        assert report['config']['synth']['corrupted_views'] == [2]

    def test_zero_seeds(self, capsys):
        assert run(self.ARGS + ["--seeds", "0"], capsys)[0] == 1

    def test_repeatable_file(self, tmp_path, capsys):
        files = []
        for name in ("a.json", "b.json"):
            out = tmp_path / name
            assert run(self.ARGS + ["--seeds", "2", "--seed", "4", "--out", str(out)], capsys)[0] == 0
            files.append(out.read_bytes())
        assert files[0] == files[1]

    def test_csv_table(self, tmp_path, capsys):
        table = tmp_path / "rows.csv"
        assert run(self.ARGS + ["--seeds", "1", "--csv", str(table)], capsys)[0] == 0
        with open(table, newline="") as handle:
            rows = list(csv.DictReader(handle))
        assert len(rows) == 6
        assert set(rows[0]) == {"seed", "method", "ari", "nmi", "runtime_s"}

    def test_corrupted_view_out_of_range(self, capsys):
        assert run(["bench", "--views", "2", "--corrupt", "5", "--seeds", "1"], capsys)[0] == 1


def test_parser_defaults():
    args = build_parser().parse_args(["summarize", "--view", "a.csv", "--clusters", "4"])
    assert args.gamma == 1.0
    assert args.bandwidth == "median"
    assert args.row_normalize is True
    assert args.restarts == 10
    assert args.seed is None


def test_integer_settings_parse_on_use():
    assert parse_int_setting("MVML_SEED", "12") == 12
    with pytest.raises(InvalidParameterError, match="MVML_SEED"):
        parse_int_setting("MVML_SEED", "1.5")
