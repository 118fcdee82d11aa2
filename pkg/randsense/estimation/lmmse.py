"""LMMSE estimation of the target response matrix and its error functionals."""

import numpy as np

from randsense.core_model.sensing import forward_model
from randsense.errors import InvalidParameterError
from randsense.models.precoder import EstimateReport, PrecoderLike, as_matrix
from randsense.models.system import CorrelationMatrix, SensingScene, SystemConfig
from randsense.utils.linalg import hermitian_solve, trace_inverse


def _check_noise(noise_var: float, n_rx: int) -> float:
    if not noise_var > 0:
        raise InvalidParameterError(f"noise_var must be positive, got {noise_var}", parameter="noise_var")
    if n_rx < 1:
        raise InvalidParameterError(f"n_rx must be >= 1, got {n_rx}", parameter="n_rx")
    return noise_var * n_rx


def _check_signal(s: np.ndarray, n_tx: int) -> np.ndarray:
    s = np.asarray(s)
    if s.ndim != 2 or s.shape[0] != n_tx:
        raise InvalidParameterError(f"signal must have {n_tx} rows, got shape {s.shape}", parameter="s")
    return s


def _check_precoder(w: PrecoderLike, corr: CorrelationMatrix) -> np.ndarray:
    matrix = as_matrix(w)
    if matrix.shape != (corr.n_tx, corr.n_tx):
        raise InvalidParameterError(
            f"precoder must be {corr.n_tx}x{corr.n_tx}, got {matrix.shape}", parameter="w"
        )
    return matrix


def signal_gram(s: np.ndarray) -> np.ndarray:
    """S S^H."""
    return s @ s.conj().T


def information_matrix(
    w: np.ndarray,
    gram: np.ndarray,
    corr: CorrelationMatrix,
    effective_noise: float,
) -> np.ndarray:
    """
    A = R_H^{-1} + (1 / (sigma_s^2 N_r)) W (S S^H) W^H.

    Args:
        w: Precoder matrix
        gram: Signal Gram matrix S S^H
        corr: Channel correlation
        effective_noise: sigma_s^2 * N_r

    Returns:
        Hermitian positive-definite n_tx x n_tx matrix
    """
    return corr.inverse + (w @ gram @ w.conj().T) / effective_noise


def lmmse_filter(x: np.ndarray, corr: CorrelationMatrix, noise_var: float, n_rx: int) -> np.ndarray:
    """
    The L x n_tx matrix (X^H R_H X + sigma_s^2 N_r I_L)^{-1} X^H R_H, so that H_hat = Y @ filter.

    Raises:
        NumericalFailureError: If the Hermitian solve fails or its residual exceeds 1e-6
    """
    effective_noise = _check_noise(noise_var, n_rx)
    x = _check_signal(x, corr.n_tx)
    x_h_r = x.conj().T @ corr.matrix
    gram = x_h_r @ x + effective_noise * np.eye(x.shape[1])
    return hermitian_solve(gram, x_h_r, "LMMSE Gram")


def lmmse_estimate(
    y: np.ndarray,
    x: np.ndarray,
    corr: CorrelationMatrix,
    noise_var: float,
    n_rx: int,
) -> np.ndarray:
    """
    LMMSE estimate H_hat = Y (X^H R_H X + sigma_s^2 N_r I_L)^{-1} X^H R_H.

    Args:
        y: Received echo, shape (n_rx, L)
        x: Sensing signal X = W S, shape (n_tx, L)
        corr: Channel correlation
        noise_var: Noise variance sigma_s^2
        n_rx: Number of receive antennas N_r

    Returns:
        Estimate of shape (n_rx, n_tx)

    Raises:
        InvalidParameterError: On dimension mismatch or non-positive noise
        NumericalFailureError: If the solve residual exceeds 1e-6
    """
    y = np.asarray(y)
    x = np.asarray(x)
    if y.ndim != 2 or y.shape != (n_rx, x.shape[-1]):
        raise InvalidParameterError(f"echo must have shape {(n_rx, x.shape[-1])}, got {y.shape}", parameter="y")
    return y @ lmmse_filter(x, corr, noise_var, n_rx)


def conditional_mse(
    w: PrecoderLike,
    s: np.ndarray,
    corr: CorrelationMatrix,
    noise_var: float,
    n_rx: int,
) -> float:
    """
    Estimation error for one realized signal, f(W; S) = tr[(R_H^{-1} + W S S^H W^H / (sigma_s^2 N_r))^{-1}].

    Args:
        w: Precoder
        s: Transmit signal, shape (n_tx, L)
        corr: Channel correlation
        noise_var: Noise variance sigma_s^2
        n_rx: Number of receive antennas N_r

    Returns:
        Value in (0, tr(R_H)]

    Raises:
        NumericalFailureError: If the information matrix is not positive definite
    """
    effective_noise = _check_noise(noise_var, n_rx)
    matrix = _check_precoder(w, corr)
    s = _check_signal(s, corr.n_tx)
    return trace_inverse(information_matrix(matrix, signal_gram(s), corr, effective_noise), "information matrix")


def deterministic_lmmse(w: PrecoderLike, config: SystemConfig, corr: CorrelationMatrix) -> float:
    """
    Error with orthogonal training, J = tr[(R_H^{-1} + (L / (sigma_s^2 N_r)) W W^H)^{-1}].

    Equals ``conditional_mse`` at any S with (1/L) S S^H = I.

    Args:
        w: Precoder
        config: System configuration
        corr: Channel correlation

    Returns:
        Value in (0, tr(R_H)]
    """
    matrix = _check_precoder(w, corr)
    gram = config.frame_len * np.eye(corr.n_tx)
    return trace_inverse(information_matrix(matrix, gram, corr, config.effective_noise), "information matrix")


def estimate_report(
    scene: SensingScene,
    w: PrecoderLike,
    s: np.ndarray,
    config: SystemConfig,
    corr: CorrelationMatrix,
) -> EstimateReport:
    """
    Sense one scene with X = W S, estimate its channel and compare with the truth and the theory.

    Args:
        scene: Channel and noise realization
        w: Precoder
        s: Transmit signal
        config: System configuration
        corr: Channel correlation

    Returns:
        EstimateReport with the estimate, its squared error and f(W; S)
    """
    x = as_matrix(w) @ s
    estimate = lmmse_estimate(forward_model(scene, x), x, corr, config.noise_var, config.n_rx)
    return EstimateReport(
        estimate=estimate,
        squared_error=float(np.sum(np.abs(scene.channel - estimate) ** 2)),
        theoretical_mse=conditional_mse(w, s, corr, config.noise_var, config.n_rx),
    )
