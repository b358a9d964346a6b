"""
Command-line frontend: summarize, learn-metric, eval and bench.

stdout carries JSON only; logs and --verbose tables go to stderr.
Exit codes: 0 success, 1 invalid arguments or input, 2 I/O or parse
failure, 3 numerical failure.
"""

import argparse
import asyncio
import csv
import logging
import os
import sys
from typing import Any, Dict, List, Optional, Sequence

from ..config.settings import parse_int_setting, settings
from ..models.bench_models import BenchReport, SynthConfig
from ..models.data_models import BandwidthPolicy, OptimizerConfig
from ..models.exceptions import DataError, InvalidParameterError, MVMLError, StageError, UsageError
from ..models.summary_models import ClusteringOptions, DatasetSpec, SummaryManifest
from ..services.evaluation import baseline_scores, eval_clustering, eval_event_pr
from ..services.orchestrator import RunManager, SummaryOrchestrator
from ..services.synthbench import run_benchmark
from ..utils.feature_io import load_ground_truth, load_labels, read_manifest, write_json

logger = logging.getLogger(__name__)


class CliArgumentParser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad usage; this project reserves 2 for I/O errors"""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    env = os.getenv("MVML_SEED")
    if env:
        return parse_int_setting("MVML_SEED", env)
    return settings.default_seed


def _configure_logging(verbose: bool):
    level = logging.INFO if verbose else getattr(logging, settings.log_level, logging.WARNING)
    logging.basicConfig(level=level, format=settings.log_format, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def _emit(data: Any, out: Optional[str]):
    text = write_json(data, out)
    if out is None:
        sys.stdout.write(text)


def _table(title: str, header: Sequence[str], rows: List[Sequence[Any]]):
    widths = [max(len(str(h)), *(len(_cell(r[i])) for r in rows)) if rows else len(str(h))
              for i, h in enumerate(header)]
    lines = [title, "  ".join(str(h).ljust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(_cell(v).ljust(w) for v, w in zip(row, widths)) for row in rows]
    sys.stderr.write("\n".join(lines) + "\n")


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.4f}"
    return str(value)


def _add_learning_args(parser: argparse.ArgumentParser):
    parser.add_argument("--view", action="append", dest="views", required=True, metavar="CSV",
                        help="feature file of one view (repeat per view)")
    parser.add_argument("--clusters", type=int, required=True, help="number of clusters / summary length")
    parser.add_argument("--gamma", type=float, default=settings.default_gamma, help="disagreement weight")
    parser.add_argument("--bandwidth", default=settings.default_bandwidth,
                        help="'median' or a fixed RBF sigma")
    parser.add_argument("--max-iters", type=int, default=settings.default_max_iters)
    parser.add_argument("--tol", type=float, default=settings.default_tol)
    parser.add_argument("--stride", type=int, default=settings.default_frame_stride,
                        help="keep every s-th frame")
    parser.add_argument("--seed", type=int, default=None, help="random seed (default: $MVML_SEED or 0)")
    parser.add_argument("--out", default=None, help="output JSON path (default: stdout)")
    parser.add_argument("--verbose", action="store_true")


def _add_clustering_args(parser: argparse.ArgumentParser):
    parser.add_argument("--row-normalize", action=argparse.BooleanOptionalAction,
                        default=settings.default_row_normalize)
    parser.add_argument("--restarts", type=int, default=settings.default_restarts)
    parser.add_argument("--kmeans-iters", type=int, default=settings.default_kmeans_iters)


def build_parser() -> argparse.ArgumentParser:
    parser = CliArgumentParser(prog="mvsumm", description="Multi-view metric learning keyframe summarizer")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliArgumentParser)

    summarize = sub.add_parser("summarize", help="learn the metric, cluster and pick keyframes")
    _add_learning_args(summarize)
    _add_clustering_args(summarize)
    summarize.add_argument("--view-strategy", choices=["similarity", "first-view"],
                           default=settings.default_view_strategy)

    learn = sub.add_parser("learn-metric", help="learn view weights only")
    _add_learning_args(learn)

    evaluate = sub.add_parser("eval", help="score a manifest against ground truth")
    evaluate.add_argument("--manifest", required=True)
    evaluate.add_argument("--events", default=None, help="ground-truth events JSON")
    evaluate.add_argument("--labels", default=None, help="planted labels (JSON list or one per line)")
    evaluate.add_argument("--baselines", action="store_true",
                          help="also score same-length uniform and random summaries")
    evaluate.add_argument("--out", default=None)
    evaluate.add_argument("--verbose", action="store_true")

    bench = sub.add_parser("bench", help="synthetic comparative benchmark")
    bench.add_argument("--views", type=int, default=3)
    bench.add_argument("--clusters", type=int, default=5)
    bench.add_argument("--points-per-cluster", type=int, default=settings.bench_points_per_cluster)
    bench.add_argument("--latent-dim", type=int, default=settings.bench_latent_dim)
    bench.add_argument("--noise", type=float, default=settings.bench_noise_sigma, help="view noise sigma")
    bench.add_argument("--corrupt", type=int, action="append", default=[], metavar="VIEW",
                       help="replace this view with pure noise (repeatable)")
    bench.add_argument("--separation", type=float, default=settings.bench_separation)
    bench.add_argument("--cluster-std", type=float, default=settings.bench_cluster_std)
    bench.add_argument("--seeds", type=int, default=20, help="number of instances")
    bench.add_argument("--seed", type=int, default=None, help="first instance seed")
    bench.add_argument("--gamma", type=float, default=settings.default_gamma)
    bench.add_argument("--max-iters", type=int, default=settings.default_max_iters)
    bench.add_argument("--tol", type=float, default=settings.default_tol)
    _add_clustering_args(bench)
    bench.add_argument("--workers", type=int, default=1)
    bench.add_argument("--csv", default=None, help="per-seed metrics table")
    bench.add_argument("--timings", action="store_true", help="include runtimes in the report")
    bench.add_argument("--out", default=None)
    bench.add_argument("--verbose", action="store_true")
    return parser


def _learning_inputs(args) -> tuple:
    spec = DatasetSpec(
        view_paths=args.views,
        bandwidth=BandwidthPolicy.parse(args.bandwidth),
        frame_stride=args.stride
    )
    config = OptimizerConfig(c=args.clusters, gamma=args.gamma, max_iters=args.max_iters,
                             tol=args.tol, seed=_resolve_seed(args.seed))
    return spec, config


def cmd_summarize(args) -> int:
    spec, config = _learning_inputs(args)
    options = ClusteringOptions(row_normalize=args.row_normalize, restarts=args.restarts,
                                max_iters=args.kmeans_iters, view_strategy=args.view_strategy)
    if options.restarts < 1 or options.max_iters < 1:
        raise InvalidParameterError("--restarts and --kmeans-iters must be >= 1")

    runs = RunManager()
    run_id = runs.create_run("summarize", {'dataset': spec.to_dict(), 'optimizer': config.to_dict(),
                                           'clustering': options.to_dict()}, args.out)
    manifest = asyncio.run(SummaryOrchestrator(runs).summarize(spec, config, options, run_id))
    _emit(manifest.to_dict(), args.out)

    if args.verbose:
        _table("view weights", ["view", "path", "sigma", "weight"],
               [[k, path, s, w] for k, (path, s, w) in
                enumerate(zip(spec.view_paths, manifest.sigma_per_view, manifest.weights.to_list()))])
        _table("keyframes", ["cluster", "frame", "view"],
               [[r['cluster'], r['frame'], r['view']] for r in manifest.representatives.to_dict()])
    return 0


def cmd_learn_metric(args) -> int:
    spec, config = _learning_inputs(args)
    runs = RunManager()
    run_id = runs.create_run("learn-metric", {'dataset': spec.to_dict(), 'optimizer': config.to_dict()}, args.out)
    report = asyncio.run(SummaryOrchestrator(runs).learn_metric(spec, config, run_id))
    _emit(report, args.out)

    if args.verbose:
        _table("view weights", ["view", "path", "weight"],
               [[k, path, w] for k, (path, w) in enumerate(zip(spec.view_paths, report['weights']))])
        _table("objective", ["iteration", "value"], [[i, v] for i, v in enumerate(report['objective_trace'])])
    return 0


def cmd_eval(args) -> int:
    if args.events is None and args.labels is None:
        raise UsageError("eval needs --events, --labels, or both")
    manifest: SummaryManifest = read_manifest(args.manifest)
    result: Dict[str, Any] = {'manifest': args.manifest, 'summary_frames': manifest.summary_frames}

    if args.events is not None:
        gt = load_ground_truth(args.events)
        precision, recall = eval_event_pr(manifest, gt)
        result.update({'events': len(gt.events), 'precision': precision, 'recall': recall})
        if args.baselines:
            result['baselines'] = baseline_scores(manifest, gt)

    if args.labels is not None:
        ari, nmi = eval_clustering(manifest.labels, load_labels(args.labels))
        result.update({'ari': ari, 'nmi': nmi})

    _emit(result, args.out)
    if args.verbose:
        rows = [[key, result[key]] for key in ('precision', 'recall', 'ari', 'nmi') if key in result]
        _table("evaluation", ["metric", "value"], rows)
    return 0


def write_bench_csv(report: BenchReport, path: str):
    try:
        with open(path, "w", newline="") as handle:
            writer = csv.DictWriter(handle, fieldnames=["seed", "method", "ari", "nmi", "runtime_s"])
            writer.writeheader()
            writer.writerows(report.rows)
    except OSError as e:
        raise DataError(f"cannot write {path}: {e}")


def cmd_bench(args) -> int:
    if args.seeds < 1:
        raise InvalidParameterError(f"--seeds must be >= 1, got {args.seeds}")
    first = _resolve_seed(args.seed)
    cfg = SynthConfig(
        n_clusters=args.clusters,
        points_per_cluster=args.points_per_cluster,
        latent_dim=args.latent_dim,
        n_views=args.views,
        noise_sigma=args.noise,
        corrupted_views=tuple(args.corrupt),
        cluster_separation=args.separation,
        cluster_std=args.cluster_std,
        seed=first
    )
    optimizer = OptimizerConfig(c=args.clusters, gamma=args.gamma, max_iters=args.max_iters, tol=args.tol)
    options = ClusteringOptions(row_normalize=args.row_normalize, restarts=args.restarts,
                                max_iters=args.kmeans_iters)

    report = run_benchmark(cfg, range(first, first + args.seeds), optimizer, options, workers=args.workers)
    _emit(report.to_dict(include_timings=args.timings), args.out)
    if args.csv:
        write_bench_csv(report, args.csv)

    if args.verbose:
        _table("benchmark", ["method", "ARI mean", "ARI std", "NMI mean", "NMI std", "n"],
               [[name, s.ari_mean, s.ari_std, s.nmi_mean, s.nmi_std, s.count]
                for name, s in report.methods.items()])
    return 0


COMMANDS = {
    'summarize': cmd_summarize,
    'learn-metric': cmd_learn_metric,
    'eval': cmd_eval,
    'bench': cmd_bench,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run the subcommand, and map errors to exit codes"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code

    _configure_logging(getattr(args, "verbose", False))
    try:
        return COMMANDS[args.command](args)
    except StageError as e:
        sys.stderr.write(f"error in stage '{e.stage}': {e.cause}\n")
        return e.exit_code
    except MVMLError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.exit_code
    except OSError as e:
        sys.stderr.write(f"error: {e}\n")
        return DataError.exit_code
