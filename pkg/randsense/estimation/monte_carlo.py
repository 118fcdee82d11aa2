"""Monte Carlo check of the LMMSE error formula."""

import math

import numpy as np

from randsense.core_model.generators import sample_scene
from randsense.core_model.seeding import derive_seed
from randsense.core_model.sensing import forward_model
from randsense.errors import InvalidParameterError
from randsense.estimation.lmmse import lmmse_filter
from randsense.models.precoder import PrecoderLike, as_matrix
from randsense.models.system import CorrelationMatrix, SystemConfig
from randsense.utils.logger import get_logger
from randsense.utils.parallel import parallel_map

logger = get_logger(__name__)


def empirical_mse(
    w: PrecoderLike,
    s: np.ndarray,
    config: SystemConfig,
    corr: CorrelationMatrix,
    trials: int,
    seed: int,
    n_jobs: int = 1,
) -> float:
    """
    Average ||H - H_hat||_F^2 over independent scenes with X = W S held fixed.

    Trial ``t`` draws its scene from the seed derived from ``(seed, t)``, so
    the value does not depend on ``n_jobs``.

    Args:
        w: Precoder
        s: Transmit signal, shape (n_tx, L)
        config: System configuration
        corr: Channel correlation
        trials: Number of scenes
        seed: Seed of the experiment
        n_jobs: Worker threads

    Returns:
        Unbiased estimate of ``conditional_mse(w, s, ...)``

    Raises:
        InvalidParameterError: If trials < 1
    """
    if trials < 1:
        raise InvalidParameterError(f"trials must be >= 1, got {trials}", parameter="trials")

    x = as_matrix(w) @ s
    estimator = lmmse_filter(x, corr, config.noise_var, config.n_rx)

    def squared_error(trial: int) -> float:
        scene = sample_scene(config, corr, derive_seed(seed, trial))
        estimate = forward_model(scene, x) @ estimator
        return float(np.sum(np.abs(scene.channel - estimate) ** 2))

    errors = parallel_map(squared_error, range(trials), n_jobs=n_jobs)
    value = math.fsum(errors) / trials
    logger.debug("Empirical MSE", extra={"trials": trials, "value": value})
    return value
