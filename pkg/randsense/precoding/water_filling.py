"""Water-filling precoder for orthogonal training signals."""

from enum import Enum
from typing import Union

import numpy as np
from scipy.optimize import bisect

from randsense.models.precoder import Precoder, WaterFillingResult
from randsense.models.system import CorrelationMatrix, SystemConfig
from randsense.utils.logger import get_logger

logger = get_logger(__name__)

BISECT_RTOL = 4 * np.finfo(float).eps


class InitKind(str, Enum):
    """Starting points for the iterative optimizers."""

    WATER_FILLING = "water_filling"
    UNIFORM = "uniform"


def allocated_power(level: float, inverse_eigvals: np.ndarray, scale: float) -> float:
    """p(mu) = scale * sum_i (mu - 1/lambda_i)^+."""
    return scale * float(np.sum(np.maximum(level - inverse_eigvals, 0.0)))


def water_filling(config: SystemConfig, corr: CorrelationMatrix) -> WaterFillingResult:
    """
    Minimize the orthogonal-training LMMSE error over the power ball.

    The optimum is W = sqrt(sigma_s^2 N_r / L) Q [(mu I - Lambda^{-1})^+]^{1/2},
    where the water level mu solves p(mu) = P. p is continuous and increasing,
    so bisection on [min 1/lambda, max 1/lambda + P L / (sigma_s^2 N_r)]
    always brackets the root.

    Args:
        config: System configuration (power, noise, dimensions)
        corr: Channel correlation

    Returns:
        WaterFillingResult with ||W||_F^2 = P
    """
    scale = config.effective_noise / config.frame_len
    inverse_eigvals = 1.0 / corr.eigvals
    low = float(inverse_eigvals.min())
    high = float(inverse_eigvals.max()) + config.power / scale

    level = bisect(
        lambda mu: allocated_power(mu, inverse_eigvals, scale) - config.power,
        low,
        high,
        xtol=1e-14,
        rtol=BISECT_RTOL,
        maxiter=2000,
    )

    powers = scale * np.maximum(level - inverse_eigvals, 0.0)
    # Rescale so the budget is met to rounding
    powers *= config.power / np.sum(powers)
    active = powers > 0

    matrix = corr.eigvecs * np.sqrt(powers)
    precoder = Precoder(matrix, power=config.power)
    logger.debug(
        "Water-filling solution",
        extra={"water_level": level, "active": int(active.sum()), "n_tx": config.n_tx},
    )
    return WaterFillingResult(precoder=precoder, water_level=float(level), active_set=active, powers=powers)


def uniform_precoder(config: SystemConfig) -> Precoder:
    """sqrt(P / N_t) I."""
    return Precoder(np.sqrt(config.power / config.n_tx) * np.eye(config.n_tx), power=config.power)


def initial_precoder(
    config: SystemConfig,
    corr: CorrelationMatrix,
    kind: Union[InitKind, str] = InitKind.WATER_FILLING,
) -> Precoder:
    """Starting precoder for SCA or SGP."""
    if InitKind(kind) is InitKind.UNIFORM:
        return uniform_precoder(config)
    return water_filling(config, corr).precoder
