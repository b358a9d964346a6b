"""
Synthetic multi-view benchmark.

Events are Gaussian blobs in a latent space. Every clean view observes the
latent points through its own rigid motion plus noise; a corrupted view is
pure noise. The learned metric is compared with uniform weights, each single
view, and feature concatenation.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import replace
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .evaluation import eval_clustering
from ..algorithms.clustering import embed, kmeans
from ..algorithms.graph import build_view_laplacian
from ..algorithms.optimizer import alternate, fixed_weights
from ..models.bench_models import BenchReport, MethodStats, SynthConfig, summarize_scores
from ..models.data_models import (
    BandwidthPolicy,
    FeatureMatrix,
    Laplacian,
    LaplacianBundle,
    OptimizerConfig,
    ViewWeights,
)
from ..models.exceptions import InvalidParameterError, MVMLError, SeparationInfeasibleError
from ..models.summary_models import ClusteringOptions

logger = logging.getLogger(__name__)

WEIGHT_TIE_ATOL = 1e-12


def _streams(cfg: SynthConfig) -> Tuple[np.random.Generator, np.random.Generator]:
    latent_seq, views_seq = np.random.SeedSequence(cfg.seed).spawn(2)
    return np.random.default_rng(latent_seq), np.random.default_rng(views_seq)


def gen_latent(cfg: SynthConfig) -> Tuple[np.ndarray, np.ndarray]:
    """
    Latent points and planted labels.

    Centres are rejection-sampled in a cube wide enough to hold them at the
    requested pairwise separation; members are Gaussian around their centre.
    Frames are ordered by event, like consecutive shots of a video.
    """
    rng, _ = _streams(cfg)
    c, d = cfg.n_clusters, cfg.latent_dim
    half_width = cfg.cluster_separation * max(1.0, c ** (1.0 / d))

    centers: List[np.ndarray] = []
    attempts = 0
    while len(centers) < c:
        if attempts >= cfg.max_center_attempts:
            raise SeparationInfeasibleError(
                f"placed {len(centers)} of {c} centres at separation {cfg.cluster_separation} "
                f"after {attempts} attempts"
            )
        attempts += 1
        candidate = rng.uniform(-half_width, half_width, size=d)
        if all(np.linalg.norm(candidate - other) >= cfg.cluster_separation for other in centers):
            centers.append(candidate)

    labels = np.repeat(np.arange(c), cfg.points_per_cluster)
    latent = np.asarray(centers)[labels] + cfg.cluster_std * rng.standard_normal((labels.size, d))
    return latent, labels


def random_orthogonal(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed orthogonal matrix: QR of a Gaussian matrix with sign-fixed diagonal"""
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    signs = np.sign(np.diag(r))
    signs[signs == 0] = 1.0
    return q * signs


def gen_views(latent: np.ndarray, cfg: SynthConfig) -> List[FeatureMatrix]:
    """Render the latent points into K views; corrupted views carry no signal"""
    _, rng = _streams(cfg)
    n, d = latent.shape
    scale = float(latent.std()) or 1.0

    views = []
    for k, noise in enumerate(cfg.view_noise()):
        if k in cfg.corrupted_views:
            data = scale * rng.standard_normal((n, d))
        else:
            rotation = random_orthogonal(d, rng)
            translation = rng.normal(scale=cfg.cluster_separation, size=d)
            data = latent @ rotation + translation
            if noise > 0:
                data = data + noise * rng.standard_normal((n, d))
        views.append(FeatureMatrix(data))
    return views


def _spectral_labels(laplacian: Laplacian, c: int, options: ClusteringOptions, seed: int) -> np.ndarray:
    embedding = embed(laplacian, c, options.row_normalize)
    return kmeans(embedding, c, options.restarts, options.max_iters, seed).labels


def run_instance(cfg: SynthConfig, optimizer: OptimizerConfig,
                 options: ClusteringOptions) -> Dict[str, Any]:
    """One seed: every method's ARI/NMI/runtime and the learned weights"""
    stage = "generate"
    try:
        latent, truth = gen_latent(cfg)
        views = gen_views(latent, cfg)

        stage = "graph"
        started = time.perf_counter()
        laplacians = [build_view_laplacian(view, BandwidthPolicy.median())[1] for view in views]
        bundle = LaplacianBundle(laplacians)
        graph_time = time.perf_counter() - started

        scores: Dict[str, Dict[str, float]] = {}
        c = cfg.n_clusters

        def score(name: str, make_laplacian, shared_time: float = 0.0):
            began = time.perf_counter()
            laplacian = make_laplacian()
            labels = _spectral_labels(laplacian, c, options, cfg.seed)
            ari, nmi = eval_clustering(labels, truth)
            scores[name] = {'ari': ari, 'nmi': nmi, 'runtime_s': shared_time + time.perf_counter() - began}

        stage = "ours"
        learned = {}

        def learn() -> Laplacian:
            result = alternate(bundle, replace(optimizer, seed=cfg.seed))
            learned['weights'] = result.weights.to_list()
            return result.combined

        score("ours", learn, graph_time)

        stage = "uniform"
        uniform_config = replace(optimizer, seed=cfg.seed)
        score("uniform", lambda: fixed_weights(bundle, ViewWeights.uniform(bundle.k), uniform_config).combined,
              graph_time)

        for k, laplacian in enumerate(laplacians):
            stage = f"view-{k}"
            score(f"view-{k}", lambda laplacian=laplacian: laplacian, graph_time / bundle.k)

        stage = "concatenated"
        stacked = FeatureMatrix(np.hstack([view.data for view in views]))
        score("concatenated", lambda: build_view_laplacian(stacked, BandwidthPolicy.median())[1])

        return {'seed': cfg.seed, 'scores': scores, 'weights': learned['weights']}
    except MVMLError as e:
        logger.warning("benchmark seed %d failed in %s: %s", cfg.seed, stage, e)
        return {'seed': cfg.seed, 'error': {'seed': cfg.seed, 'stage': stage, 'error': str(e)}}


def corrupted_view_is_min(weights: Sequence[float], corrupted: Sequence[int]) -> bool:
    """Every corrupted view weighs no more than every clean view"""
    clean = [w for k, w in enumerate(weights) if k not in corrupted]
    return max(weights[k] for k in corrupted) <= min(clean) + WEIGHT_TIE_ATOL


def run_benchmark(cfg: SynthConfig, seeds: Sequence[int],
                  optimizer: Optional[OptimizerConfig] = None,
                  options: ClusteringOptions = ClusteringOptions(),
                  workers: int = 1) -> BenchReport:
    """
    Run every method on one generated instance per seed and aggregate.

    Instances are independent, so they may run on a thread pool; results are
    collected in seed order and statistics do not depend on that order.
    """
    seeds = [int(s) for s in seeds]
    if not seeds:
        raise InvalidParameterError("the benchmark needs at least one seed")
    if len(set(seeds)) != len(seeds):
        raise InvalidParameterError(f"benchmark seeds must be distinct, got {seeds}")
    if workers < 1:
        raise InvalidParameterError(f"workers must be >= 1, got {workers}")
    optimizer = optimizer or OptimizerConfig(c=cfg.n_clusters)
    if optimizer.c != cfg.n_clusters:
        raise InvalidParameterError(f"optimizer c={optimizer.c} differs from n_clusters={cfg.n_clusters}")

    instances = [cfg.with_seed(seed) for seed in seeds]
    if workers == 1:
        outcomes = [run_instance(inst, optimizer, options) for inst in instances]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(lambda inst: run_instance(inst, optimizer, options), instances))

    method_names = ["ours", "uniform"] + [f"view-{k}" for k in range(cfg.n_views)] + ["concatenated"]
    rows: List[Dict[str, Any]] = []
    weights: Dict[int, List[float]] = {}
    failures: List[Dict[str, Any]] = []
    for outcome in outcomes:
        if 'error' in outcome:
            failures.append(outcome['error'])
            continue
        weights[outcome['seed']] = outcome['weights']
        for name in method_names:
            rows.append({'seed': outcome['seed'], 'method': name, **outcome['scores'][name]})

    methods = {}
    for name in method_names:
        mine = [row for row in rows if row['method'] == name]
        ari_mean, ari_std = summarize_scores([row['ari'] for row in mine])
        nmi_mean, nmi_std = summarize_scores([row['nmi'] for row in mine])
        runtime_mean, _ = summarize_scores([row['runtime_s'] for row in mine])
        methods[name] = MethodStats(ari_mean, ari_std, nmi_mean, nmi_std, runtime_mean, len(mine))

    corrupted_fraction = None
    if cfg.corrupted_views and len(cfg.corrupted_views) < cfg.n_views and weights:
        hits = sum(corrupted_view_is_min(mu, cfg.corrupted_views) for mu in weights.values())
        corrupted_fraction = hits / len(weights)

    logger.info("benchmark finished: %d seeds, %d failures", len(seeds), len(failures))
    return BenchReport(
        methods=methods,
        rows=rows,
        weights=weights,
        failures=failures,
        config={
            'synth': {key: value for key, value in cfg.to_dict().items() if key != 'seed'},
            'optimizer': {key: value for key, value in optimizer.to_dict().items() if key != 'seed'},
            'clustering': options.to_dict()
        },
        seeds=seeds,
        corrupted_min_fraction=corrupted_fraction
    )
