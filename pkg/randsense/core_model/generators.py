"""Random generation of channel statistics, transmit signals and sensing scenes."""

from typing import Optional, Union

import numpy as np
from scipy import linalg
from scipy.stats import unitary_group

from randsense.core_model.seeding import substream
from randsense.errors import InfeasibleOrthogonalityError, InvalidParameterError
from randsense.models.system import CorrelationMatrix, SensingScene, SignalBatch, SignalKind, SystemConfig
from randsense.utils.linalg import crandn
from randsense.utils.logger import get_logger

logger = get_logger(__name__)


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an n x n Haar-distributed unitary matrix."""
    if n == 1:
        return np.exp(2j * np.pi * rng.uniform(size=(1, 1)))
    return unitary_group.rvs(n, random_state=rng)


def gen_correlation(n_tx: int, eig_low: float, eig_high: float, seed: int) -> CorrelationMatrix:
    """
    Generate a random channel correlation matrix R_H = Q diag(lambda) Q^H.

    Eigenvalues are i.i.d. uniform on [eig_low, eig_high]; Q is Haar-random.

    Args:
        n_tx: Number of transmit antennas
        eig_low: Lower end of the eigenvalue interval (> 0)
        eig_high: Upper end of the eigenvalue interval (>= eig_low)
        seed: Seed of the generator

    Returns:
        CorrelationMatrix with cached eigendecomposition

    Raises:
        InvalidParameterError: If the interval or dimension is invalid
    """
    if n_tx < 1:
        raise InvalidParameterError(f"n_tx must be >= 1, got {n_tx}", parameter="n_tx")
    if not eig_low > 0:
        raise InvalidParameterError(f"eig_low must be positive, got {eig_low}", parameter="eig_low")
    if eig_high < eig_low:
        raise InvalidParameterError(f"eig_high ({eig_high}) must be >= eig_low ({eig_low})", parameter="eig_high")

    rng = substream(seed)
    eigvals = rng.uniform(eig_low, eig_high, size=n_tx)
    eigvecs = haar_unitary(n_tx, rng)

    corr = CorrelationMatrix.from_eigen(eigvals, eigvecs)
    logger.debug(
        "Generated correlation matrix",
        extra={"n_tx": n_tx, "trace": round(corr.trace, 6), "seed": seed},
    )
    return corr


def orthogonal_training(n_tx: int, frame_len: int) -> np.ndarray:
    """
    Deterministic training S_D with (1/L) S_D S_D^H = I: the first n_tx rows of the L-point DFT matrix.

    Raises:
        InfeasibleOrthogonalityError: If frame_len < n_tx
    """
    if frame_len < n_tx:
        raise InfeasibleOrthogonalityError(
            f"orthogonal training needs frame_len >= n_tx, got L={frame_len} < Nt={n_tx}",
            parameter="frame_len",
        )
    return linalg.dft(frame_len)[:n_tx].astype(complex)


def sample_signals(
    config: SystemConfig,
    count: int,
    kind: Union[SignalKind, str] = SignalKind.GAUSSIAN,
    seed: int = 0,
) -> SignalBatch:
    """
    Draw a batch of transmit signals.

    Gaussian samples have i.i.d. CN(0, 1) entries, so every column has
    covariance I; sample ``n`` comes from substream ``(seed, n)``. The
    deterministic kind repeats the orthogonal training matrix and ignores
    the seed.

    Args:
        config: System configuration (n_tx, frame_len)
        count: Number of samples N
        kind: Signal family
        seed: Seed of the batch

    Returns:
        SignalBatch of shape (count, n_tx, frame_len)

    Raises:
        InvalidParameterError: If count < 1
        InfeasibleOrthogonalityError: Deterministic kind with frame_len < n_tx
    """
    if count < 1:
        raise InvalidParameterError(f"count must be >= 1, got {count}", parameter="count")
    kind = SignalKind(kind)
    shape = (config.n_tx, config.frame_len)

    if kind is SignalKind.DETERMINISTIC_ORTHOGONAL:
        training = orthogonal_training(config.n_tx, config.frame_len)
        samples = np.broadcast_to(training, (count,) + shape).copy()
    else:
        samples = np.stack([crandn(substream(seed, n), shape) for n in range(count)])

    return SignalBatch(samples=samples, kind=kind)


def sample_scene(
    config: SystemConfig,
    corr: CorrelationMatrix,
    seed: int,
    noise_var: Optional[float] = None,
) -> SensingScene:
    """
    Draw one target-response matrix and noise realization.

    Rows of H_s are i.i.d. CN(0, R_H / N_r), so E[H_s^H H_s] = R_H; noise
    entries are CN(0, sigma_s^2).

    Args:
        config: System configuration
        corr: Channel correlation matrix
        seed: Seed of the scene
        noise_var: Override of ``config.noise_var``; zero is accepted and gives Z_s = 0

    Returns:
        SensingScene

    Raises:
        InvalidParameterError: If the correlation dimension does not match n_tx
    """
    if corr.n_tx != config.n_tx:
        raise InvalidParameterError(
            f"correlation matrix is {corr.n_tx}x{corr.n_tx} but n_tx={config.n_tx}", parameter="corr"
        )
    variance = config.noise_var if noise_var is None else float(noise_var)
    if variance < 0:
        raise InvalidParameterError(f"noise variance must be >= 0, got {variance}", parameter="noise_var")

    gaussian = crandn(substream(seed, 0), (config.n_rx, config.n_tx))
    channel = gaussian @ corr.sqrt / np.sqrt(config.n_rx)

    if variance == 0:
        noise = np.zeros((config.n_rx, config.frame_len), dtype=complex)
    else:
        noise = np.sqrt(variance) * crandn(substream(seed, 1), (config.n_rx, config.frame_len))

    return SensingScene(channel=channel, noise=noise)
