"""Sample-average ELMMSE and its Jensen lower bound."""

from typing import Tuple

import numpy as np

from randsense.errors import InvalidParameterError
from randsense.estimation.lmmse import conditional_mse, deterministic_lmmse
from randsense.models.precoder import ElmmseEstimate, PrecoderLike, as_matrix
from randsense.models.system import CorrelationMatrix, SignalBatch, SystemConfig
from randsense.utils.logger import get_logger
from randsense.utils.parallel import parallel_map

logger = get_logger(__name__)


def _check_batch(batch: SignalBatch, config: SystemConfig) -> None:
    if (batch.n_tx, batch.frame_len) != (config.n_tx, config.frame_len):
        raise InvalidParameterError(
            f"batch samples are {batch.n_tx}x{batch.frame_len}, expected {config.n_tx}x{config.frame_len}",
            parameter="batch",
        )


def sample_objectives(
    w: PrecoderLike,
    batch: SignalBatch,
    config: SystemConfig,
    corr: CorrelationMatrix,
    n_jobs: int = 1,
) -> np.ndarray:
    """Per-sample conditional MSE f(W; S_n), in batch order."""
    _check_batch(batch, config)
    matrix = as_matrix(w)
    values = parallel_map(
        lambda s: conditional_mse(matrix, s, corr, config.noise_var, config.n_rx),
        batch,
        n_jobs=n_jobs,
    )
    return np.asarray(values, dtype=float)


def monte_carlo_elmmse(
    w: PrecoderLike,
    batch: SignalBatch,
    config: SystemConfig,
    corr: CorrelationMatrix,
    n_jobs: int = 1,
) -> ElmmseEstimate:
    """
    Estimate the ergodic LMMSE E_S[f(W; S)] by averaging over a signal batch.

    Args:
        w: Precoder
        batch: Signal realizations S_1..S_N
        config: System configuration
        corr: Channel correlation
        n_jobs: Worker threads

    Returns:
        ElmmseEstimate with the sample mean and its standard error

    Raises:
        InvalidParameterError: If the batch dimensions do not match the configuration
        NumericalFailureError: Propagated from the per-sample evaluation
    """
    estimate = ElmmseEstimate.from_values(sample_objectives(w, batch, config, corr, n_jobs=n_jobs))
    logger.debug(
        "ELMMSE estimate",
        extra={"count": estimate.count, "mean": estimate.mean, "std_error": estimate.std_error},
    )
    return estimate


def jensen_bound(w: PrecoderLike, config: SystemConfig, corr: CorrelationMatrix) -> float:
    """
    Lower bound of the ELMMSE: the LMMSE error of orthogonal training.

    f(W; S) is convex in S S^H and E[S S^H] = L I for unit-variance signals,
    so E[f(W; S)] >= f(W; S_D) with (1/L) S_D S_D^H = I.
    """
    return deterministic_lmmse(w, config, corr)


def jensen_gap(
    w: PrecoderLike,
    batch: SignalBatch,
    config: SystemConfig,
    corr: CorrelationMatrix,
    n_jobs: int = 1,
) -> Tuple[ElmmseEstimate, float, float]:
    """
    ELMMSE estimate, its Jensen bound and the gap between them.

    Returns:
        Tuple of (estimate, bound, estimate.mean - bound)
    """
    estimate = monte_carlo_elmmse(w, batch, config, corr, n_jobs=n_jobs)
    bound = jensen_bound(w, config, corr)
    return estimate, bound, estimate.mean - bound
