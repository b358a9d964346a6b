"""
Configuration module for the multi-view metric learning summarizer.
"""

import os
from pathlib import Path
from dotenv import load_dotenv

from ..models.exceptions import InvalidParameterError

# Load environment variables
load_dotenv()

# Base paths
BASE_DIR = Path(__file__).parent.parent.parent

# Reproducibility
# Integer variables stay raw here and are parsed on use
DEFAULT_SEED = os.getenv("MVML_SEED", "0")

# Logging
LOG_LEVEL = os.getenv("MVML_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# Run registry (empty = in-memory tracking only)
DATABASE_URL = os.getenv("MVML_DATABASE_URL", "")

# n above this triggers a warning: kernels are dense n x n
MAX_FRAMES_WARNING = os.getenv("MVML_MAX_FRAMES", "5000")

# Metric learning defaults
DEFAULT_GAMMA = 1.0
DEFAULT_MAX_ITERS = 100
DEFAULT_TOL = 1e-8
QP_MAX_VIEWS = 20

# Clustering defaults
DEFAULT_RESTARTS = 10
DEFAULT_KMEANS_ITERS = 300
DEFAULT_ROW_NORMALIZE = True
DEFAULT_VIEW_STRATEGY = "similarity"

# Pipeline defaults
DEFAULT_BANDWIDTH = "median"
DEFAULT_FRAME_STRIDE = 1
MANIFEST_SCHEMA = 1

# Synthetic benchmark defaults
BENCH_POINTS_PER_CLUSTER = 40
BENCH_LATENT_DIM = 3
BENCH_NOISE_SIGMA = 0.1
BENCH_SEPARATION = 10.0
BENCH_CLUSTER_STD = 1.0
BENCH_MAX_CENTER_ATTEMPTS = 10000


def parse_int_setting(name: str, raw: str) -> int:
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"{name} must be an integer, got '{raw}'")


class Settings:
    """Application settings class"""

    def __init__(self):
        self.base_dir = BASE_DIR
        self.log_level = LOG_LEVEL
        self.log_format = LOG_FORMAT
        self.database_url = DATABASE_URL
        self.raw_default_seed = DEFAULT_SEED or "0"
        self.raw_max_frames_warning = MAX_FRAMES_WARNING or "5000"

        self.default_gamma = DEFAULT_GAMMA
        self.default_max_iters = DEFAULT_MAX_ITERS
        self.default_tol = DEFAULT_TOL
        self.qp_max_views = QP_MAX_VIEWS

        self.default_restarts = DEFAULT_RESTARTS
        self.default_kmeans_iters = DEFAULT_KMEANS_ITERS
        self.default_row_normalize = DEFAULT_ROW_NORMALIZE
        self.default_view_strategy = DEFAULT_VIEW_STRATEGY

        self.default_bandwidth = DEFAULT_BANDWIDTH
        self.default_frame_stride = DEFAULT_FRAME_STRIDE
        self.manifest_schema = MANIFEST_SCHEMA

        self.bench_points_per_cluster = BENCH_POINTS_PER_CLUSTER
        self.bench_latent_dim = BENCH_LATENT_DIM
        self.bench_noise_sigma = BENCH_NOISE_SIGMA
        self.bench_separation = BENCH_SEPARATION
        self.bench_cluster_std = BENCH_CLUSTER_STD
        self.bench_max_center_attempts = BENCH_MAX_CENTER_ATTEMPTS

    @property
    def default_seed(self) -> int:
        return parse_int_setting("MVML_SEED", self.raw_default_seed)

    @property
    def max_frames_warning(self) -> int:
        return parse_int_setting("MVML_MAX_FRAMES", self.raw_max_frames_warning)


# Global settings instance
settings = Settings()
