"""Comparison and Bayesian point estimation of feature allocations.

FARO loss compares binary feature-allocation matrices by their best column
alignment (a linear assignment problem); FANGS searches for the allocation
minimizing its Monte Carlo expected value over posterior samples.
"""

__version__ = "0.1.0"

from .baselines import DrawsResult, draws_losses, draws_method, psm, psm_score, sifa_estimate
from .fangs import (
    ConfigError,
    SearchConfig,
    SearchResult,
    align_to_baseline,
    fangs,
    mean_and_threshold,
    sweeten,
)
from .faro import FaroResult, expected_loss, faro_loss
from .hamming import LossParams, cost_matrix, gen_hamming
from .lap import Assignment, bench_alignment, brute_force_lap, solve_lap
from .matrix import (
    DimensionError,
    FeatureAllocation,
    SampleSet,
    adjacency,
    augment,
    left_order,
    permute_columns,
    same_class,
    strip_zero_columns,
)

__all__ = [
    "Assignment",
    "ConfigError",
    "DimensionError",
    "DrawsResult",
    "FaroResult",
    "FeatureAllocation",
    "LossParams",
    "SampleSet",
    "SearchConfig",
    "SearchResult",
    "adjacency",
    "align_to_baseline",
    "augment",
    "bench_alignment",
    "brute_force_lap",
    "cost_matrix",
    "draws_losses",
    "draws_method",
    "expected_loss",
    "fangs",
    "faro_loss",
    "gen_hamming",
    "left_order",
    "mean_and_threshold",
    "permute_columns",
    "psm",
    "psm_score",
    "same_class",
    "sifa_estimate",
    "solve_lap",
    "strip_zero_columns",
    "sweeten",
]
