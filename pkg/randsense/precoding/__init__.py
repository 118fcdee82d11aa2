"""Precoder design: water-filling, data-dependent SCA and data-independent SGP."""

from .gradient import elmmse_gradient, objective_and_gradient
from .sca import data_dependent_suite, descent_gap, exact_line_search, sca_optimize, sca_subproblem
from .sgp import has_plateaued, project_to_ball, sgp_optimize
from .water_filling import InitKind, allocated_power, initial_precoder, uniform_precoder, water_filling

__all__ = [
    # Gradient
    "elmmse_gradient",
    "objective_and_gradient",
    # SCA
    "data_dependent_suite",
    "descent_gap",
    "exact_line_search",
    "sca_optimize",
    "sca_subproblem",
    # SGP
    "has_plateaued",
    "project_to_ball",
    "sgp_optimize",
    # Water-filling
    "InitKind",
    "allocated_power",
    "initial_precoder",
    "uniform_precoder",
    "water_filling",
]
