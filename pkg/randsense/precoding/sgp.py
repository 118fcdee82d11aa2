"""
Data-independent precoding by stochastic gradient projection.

A single precoder is trained on freshly drawn mini-batches of Gaussian
signals: average the per-sample gradients, step with a decaying step size
and project back onto the power ball.
"""

import math
import time
from typing import Tuple

import numpy as np

from randsense.core_model.generators import sample_signals
from randsense.core_model.seeding import derive_seed
from randsense.models.precoder import ConvergenceTrace, Precoder, PrecoderLike, SgpConfig, as_matrix
from randsense.models.system import CorrelationMatrix, SignalKind, SystemConfig
from randsense.precoding.gradient import objective_and_gradient
from randsense.utils.logger import get_logger
from randsense.utils.parallel import parallel_map

logger = get_logger(__name__)


def project_to_ball(w: PrecoderLike, power: float) -> Precoder:
    """
    Euclidean projection onto {W : ||W||_F^2 <= P}.

    Args:
        w: Matrix to project
        power: Power budget P

    Returns:
        W itself when feasible, otherwise W scaled by sqrt(P / ||W||_F^2)
    """
    matrix = as_matrix(w)
    squared_norm = float(np.sum(np.abs(matrix) ** 2))
    if squared_norm <= power:
        return Precoder(matrix)
    return Precoder(matrix * math.sqrt(power / squared_norm))


def has_plateaued(objectives: np.ndarray, window: int, tol: float) -> bool:
    """
    True when the means of the last two non-overlapping windows differ by less than ``tol``.

    Needs at least ``2 * window`` values.
    """
    if objectives.size < 2 * window:
        return False
    recent = math.fsum(objectives[-window:]) / window
    previous = math.fsum(objectives[-2 * window : -window]) / window
    return abs(previous - recent) < tol


def sgp_optimize(
    system: SystemConfig,
    corr: CorrelationMatrix,
    init: PrecoderLike,
    cfg: SgpConfig,
    seed: int,
    n_jobs: int = 1,
) -> Tuple[Precoder, ConvergenceTrace]:
    """
    Minimize the ELMMSE over the power ball with mini-batch stochastic gradients.

    Iteration r draws |D| Gaussian signals from the stream derived from
    ``(seed, r)``, averages their gradients, steps with eta(r) and projects.
    The trace records the mini-batch mean objective at the pre-step iterate,
    eta(r) and the norm of the averaged gradient.

    Args:
        system: System configuration
        corr: Channel correlation
        init: Feasible starting precoder
        cfg: SGP settings
        seed: Seed of the training stream
        n_jobs: Worker threads for the per-sample gradients

    Returns:
        Tuple of (final precoder, trace)

    Raises:
        InvalidParameterError: If ``init`` is infeasible
        NumericalFailureError: Propagated from the gradient evaluation
    """
    started = time.perf_counter()
    current = Precoder(as_matrix(init), power=system.power).matrix
    trace = ConvergenceTrace(algorithm="sgp")

    for iteration in range(1, cfg.max_iters + 1):
        batch = sample_signals(system, cfg.batch_size, SignalKind.GAUSSIAN, derive_seed(seed, iteration))
        evaluations = parallel_map(
            lambda s: objective_and_gradient(current, s, corr, system.noise_var, system.n_rx),
            batch,
            n_jobs=n_jobs,
        )
        objective = math.fsum(value for value, _ in evaluations) / cfg.batch_size
        gradient = sum((grad for _, grad in evaluations), np.zeros_like(current)) / cfg.batch_size
        if trace.initial_objective is None:
            trace.initial_objective = objective

        eta = cfg.step_size(iteration)
        current = project_to_ball(current - eta * gradient, system.power).matrix
        trace.append(iteration, objective, eta, np.linalg.norm(gradient))

        if has_plateaued(trace.objectives, cfg.window, cfg.tol):
            trace.converged = True
            break

    trace.wall_clock = time.perf_counter() - started
    logger.debug(
        "SGP finished",
        extra={"iterations": len(trace), "final": trace.final_objective, "converged": trace.converged},
    )
    return Precoder(current, power=system.power), trace
