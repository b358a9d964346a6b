"""
Shared fixtures: random generators, synthetic view bundles, hand-built
block kernels and on-disk view files.
"""

import numpy as np
import pytest

from src.algorithms.graph import build_view_laplacian, normalized_laplacian, rbf_kernel
from src.models.bench_models import SynthConfig
from src.models.data_models import (
    BandwidthPolicy,
    FeatureMatrix,
    KernelMatrix,
    LaplacianBundle,
    Representatives,
    ViewWeights,
)
from src.models.summary_models import SummaryManifest
from src.services.synthbench import gen_latent, gen_views
from src.utils.feature_io import write_feature_csv


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def make_bundle():
    """Factory: K views of n clustered points, each seen through a random linear map"""

    def _make(n: int = 20, k: int = 3, seed: int = 0, c: int = 3) -> LaplacianBundle:
        gen = np.random.default_rng(seed)
        centers = gen.normal(scale=4.0, size=(c, 3))
        latent = centers[np.arange(n) % c] + gen.normal(size=(n, 3))
        laplacians = []
        for _ in range(k):
            data = latent @ gen.normal(size=(3, 3)) + gen.normal(scale=0.5, size=(n, 3))
            laplacians.append(build_view_laplacian(FeatureMatrix(data), BandwidthPolicy.median())[1])
        return LaplacianBundle(laplacians)

    return _make


@pytest.fixture
def block_kernel():
    """Factory: block-diagonal RBF kernel with one block per component size"""

    def _make(sizes, seed: int = 0) -> KernelMatrix:
        gen = np.random.default_rng(seed)
        n = sum(sizes)
        data = np.zeros((n, n))
        start = 0
        for size in sizes:
            points = FeatureMatrix(gen.uniform(size=(max(size, 2), 2)))
            block = rbf_kernel(points, BandwidthPolicy.fixed(0.5)).data[:size, :size]
            data[start:start + size, start:start + size] = block
            start += size
        return KernelMatrix(data=data, sigma=0.5)

    return _make


@pytest.fixture
def block_laplacian(block_kernel):
    def _make(sizes, seed: int = 0):
        return normalized_laplacian(block_kernel(sizes, seed))

    return _make


@pytest.fixture
def view_files(tmp_path):
    """Factory: write a synthetic multi-view dataset as CSV files"""

    def _make(n_views: int = 2, n_clusters: int = 3, points_per_cluster: int = 8,
              seed: int = 0, corrupted=(), noise: float = 0.05, prefix: str = "view"):
        cfg = SynthConfig(n_clusters=n_clusters, points_per_cluster=points_per_cluster,
                          n_views=n_views, noise_sigma=noise, corrupted_views=tuple(corrupted), seed=seed)
        latent, labels = gen_latent(cfg)
        paths = []
        for k, view in enumerate(gen_views(latent, cfg)):
            path = tmp_path / f"{prefix}{k}.csv"
            write_feature_csv(view.data, path)
            paths.append(str(path))
        return paths, labels

    return _make


@pytest.fixture
def manifest():
    """40-frame, three-keyframe summary with keyframes at 5, 15 and 25"""
    labels = [0] * 10 + [1] * 10 + [2] * 20
    return SummaryManifest(
        n=40,
        k=2,
        c=3,
        gamma=1.0,
        sigma_per_view=[1.5, 2.5],
        weights=ViewWeights([0.25, 0.75]),
        objective_trace=[0.3, 0.2, 0.2],
        converged=True,
        iterations=2,
        labels=labels,
        representatives=Representatives([(0, 5, 0), (1, 15, 1), (2, 25, 0)]),
        seed=0,
        tool_version="test",
        config={'dataset': {'view_paths': ['a.csv', 'b.csv']}}
    )
