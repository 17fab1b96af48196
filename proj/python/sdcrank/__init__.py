"""Bounded rank-based information-loss metrics and masking methods for
numeric microdata."""

from ._sdcrank import (  # noqa: F401
    Error,
    __version__,
    abs_rank_distance,
    add_noise,
    bounded_abs_rank_distance,
    bounded_sq_rank_distance,
    bounds_for,
    brmae,
    brmse,
    default_grid,
    enumerate_permutation_distances,
    full_report,
    il1,
    il1s,
    mae,
    max_safe_n,
    mdav,
    mse,
    rank_column,
    rank_matrix,
    rank_swap,
    replicate,
    rmae,
    rmse,
    run_grid,
    sample_permutation_distances,
    spearman,
    sq_rank_distance,
)

__all__ = [
    "Error",
    "abs_rank_distance",
    "add_noise",
    "bounded_abs_rank_distance",
    "bounded_sq_rank_distance",
    "bounds_for",
    "brmae",
    "brmse",
    "default_grid",
    "enumerate_permutation_distances",
    "full_report",
    "il1",
    "il1s",
    "mae",
    "max_safe_n",
    "mdav",
    "mse",
    "rank_column",
    "rank_matrix",
    "rank_swap",
    "replicate",
    "rmae",
    "rmse",
    "run_grid",
    "sample_permutation_distances",
    "spearman",
    "sq_rank_distance",
]
