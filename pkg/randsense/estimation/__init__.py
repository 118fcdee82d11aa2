"""LMMSE estimation of the target response and its error functionals."""

from .lmmse import (
    conditional_mse,
    deterministic_lmmse,
    estimate_report,
    information_matrix,
    lmmse_estimate,
    lmmse_filter,
    signal_gram,
)
from .monte_carlo import empirical_mse

__all__ = [
    "conditional_mse",
    "deterministic_lmmse",
    "estimate_report",
    "information_matrix",
    "lmmse_estimate",
    "lmmse_filter",
    "signal_gram",
    "empirical_mse",
]
