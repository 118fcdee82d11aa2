"""
Data-dependent precoding by successive convex approximation.

Each iteration linearizes f(W; S) at the current precoder, minimizes the
linearization over the power ball in closed form and moves toward that
minimizer with an exact line search.
"""

import time
from typing import Optional, Tuple

import numpy as np
from scipy.optimize import minimize_scalar

from randsense.estimation.lmmse import conditional_mse
from randsense.models.precoder import (
    ConvergenceTrace,
    DataDependentResult,
    ElmmseEstimate,
    LineSearchConfig,
    Precoder,
    PrecoderLike,
    ScaConfig,
    as_matrix,
)
from randsense.models.system import CorrelationMatrix, SignalBatch, SystemConfig
from randsense.precoding.gradient import elmmse_gradient
from randsense.utils.linalg import inner
from randsense.utils.logger import get_logger
from randsense.utils.parallel import parallel_map

logger = get_logger(__name__)

REFINE_XATOL = 1e-9


def sca_subproblem(gradient: np.ndarray, power: float, current: Optional[PrecoderLike] = None) -> Precoder:
    """
    Minimize <G, W> over ||W||_F^2 <= P.

    The minimizer is -sqrt(P) G / ||G||_F. At a stationary point (G = 0) every
    feasible point is optimal and the current iterate is returned.

    Args:
        gradient: Gradient G at the current iterate
        power: Power budget P
        current: Current iterate, returned when G = 0 (zeros when omitted)

    Returns:
        Feasible Precoder
    """
    gradient = np.asarray(gradient, dtype=complex)
    norm = np.linalg.norm(gradient)
    if norm == 0:
        if current is None:
            return Precoder.zeros(gradient.shape[0])
        return Precoder(as_matrix(current), power=power)
    return Precoder(-np.sqrt(power) * gradient / norm, power=power)


def descent_gap(gradient: np.ndarray, w_prime: PrecoderLike, w: PrecoderLike) -> float:
    """g(W') = <G, W' - W>; never positive when W' solves the subproblem."""
    return inner(gradient, as_matrix(w_prime) - as_matrix(w))


def exact_line_search(
    w_t: PrecoderLike,
    w_prime: PrecoderLike,
    s: np.ndarray,
    corr: CorrelationMatrix,
    noise_var: float,
    n_rx: int,
    cfg: Optional[LineSearchConfig] = None,
) -> Tuple[float, float]:
    """
    Minimize phi(delta) = f(W_t + delta (W' - W_t); S) over delta in [0, 1].

    A uniform grid locates the best bracket (ties go to the smallest delta),
    then bounded Brent refinement polishes the step inside it. The result is
    never worse than the grid minimum, hence never worse than phi(0).

    Args:
        w_t: Current iterate
        w_prime: Subproblem solution
        s: Transmit signal
        corr: Channel correlation
        noise_var: Noise variance
        n_rx: Receive antennas
        cfg: Grid and refinement settings

    Returns:
        Tuple of (step, objective)
    """
    cfg = cfg or LineSearchConfig()
    start = as_matrix(w_t)
    direction = as_matrix(w_prime) - start

    def phi(delta: float) -> float:
        return conditional_mse(start + delta * direction, s, corr, noise_var, n_rx)

    if not np.any(direction):
        return 0.0, phi(0.0)

    grid = np.linspace(0.0, 1.0, cfg.grid_points)
    values = np.array([phi(delta) for delta in grid])
    best = int(np.argmin(values))
    step, objective = float(grid[best]), float(values[best])

    if cfg.refine_iters > 0:
        low = grid[max(best - 1, 0)]
        high = grid[min(best + 1, grid.size - 1)]
        result = minimize_scalar(
            phi,
            bounds=(low, high),
            method="bounded",
            options={"maxiter": cfg.refine_iters, "xatol": REFINE_XATOL},
        )
        if result.fun < objective:
            step, objective = float(result.x), float(result.fun)

    return step, objective


def sca_optimize(
    s: np.ndarray,
    init: PrecoderLike,
    cfg: ScaConfig,
    system: SystemConfig,
    corr: CorrelationMatrix,
) -> Tuple[Precoder, ConvergenceTrace]:
    """
    Optimize a precoder for one realized signal S.

    Iterates gradient, closed-form subproblem, exact line search and the
    convex-combination update W <- W + delta (W' - W). Stops once the descent
    gap g(W') rises to ``cfg.stop_gap`` or after ``cfg.max_iters`` iterations.

    Args:
        s: Transmit signal, shape (n_tx, L)
        init: Feasible starting precoder
        cfg: SCA settings
        system: System configuration
        corr: Channel correlation

    Returns:
        Tuple of (final precoder, trace with one record per iteration)

    Raises:
        InvalidParameterError: If ``init`` is infeasible
        NumericalFailureError: Propagated from the objective evaluation
    """
    started = time.perf_counter()
    current = Precoder(as_matrix(init), power=system.power).matrix
    trace = ConvergenceTrace(algorithm="sca")

    for iteration in range(1, cfg.max_iters + 1):
        objective = conditional_mse(current, s, corr, system.noise_var, system.n_rx)
        gradient = elmmse_gradient(current, s, corr, system.noise_var, system.n_rx)
        if trace.initial_objective is None:
            trace.initial_objective = objective

        target = sca_subproblem(gradient, system.power, current)
        gap = descent_gap(gradient, target, current)
        step, new_objective = exact_line_search(
            current, target, s, corr, system.noise_var, system.n_rx, cfg.line_search
        )
        if new_objective > objective:
            step, new_objective = 0.0, objective

        current = current + step * (target.matrix - current)
        trace.append(iteration, new_objective, step, gap)

        if gap >= cfg.stop_gap:
            trace.converged = True
            break

    trace.wall_clock = time.perf_counter() - started
    logger.debug(
        "SCA finished",
        extra={
            "iterations": len(trace),
            "initial": trace.initial_objective,
            "final": trace.final_objective,
            "converged": trace.converged,
        },
    )
    return Precoder(current, power=system.power), trace


def data_dependent_suite(
    batch: SignalBatch,
    init: PrecoderLike,
    cfg: ScaConfig,
    system: SystemConfig,
    corr: CorrelationMatrix,
    n_jobs: int = 1,
) -> DataDependentResult:
    """
    Run SCA independently for every signal of a batch.

    The mean of f(W_n*; S_n) over the batch is the data-dependent ELMMSE, a
    performance lower bound for any single data-independent precoder.

    Args:
        batch: Signal realizations
        init: Starting precoder shared by every sample
        cfg: SCA settings
        system: System configuration
        corr: Channel correlation
        n_jobs: Worker threads

    Returns:
        DataDependentResult in batch order
    """
    results = parallel_map(lambda s: sca_optimize(s, init, cfg, system, corr), batch, n_jobs=n_jobs)
    precoders = [precoder for precoder, _ in results]
    traces = [trace for _, trace in results]
    objectives = np.array([trace.final_objective for trace in traces], dtype=float)

    suite = DataDependentResult(
        precoders=precoders,
        objectives=objectives,
        traces=traces,
        estimate=ElmmseEstimate.from_values(objectives),
    )
    logger.debug("Data-dependent suite", extra={"count": len(suite), "mean": suite.mean})
    return suite
