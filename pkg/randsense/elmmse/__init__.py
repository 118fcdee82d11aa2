"""Ergodic LMMSE metric."""

from .metric import jensen_bound, jensen_gap, monte_carlo_elmmse, sample_objectives

__all__ = ["jensen_bound", "jensen_gap", "monte_carlo_elmmse", "sample_objectives"]
