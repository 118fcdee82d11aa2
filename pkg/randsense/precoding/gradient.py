"""Objective and gradient of the per-signal LMMSE error."""

from typing import Tuple

import numpy as np
from scipy import linalg

from randsense.estimation.lmmse import information_matrix, signal_gram
from randsense.models.precoder import PrecoderLike, as_matrix
from randsense.models.system import CorrelationMatrix
from randsense.utils.linalg import cholesky


def objective_and_gradient(
    w: PrecoderLike,
    s: np.ndarray,
    corr: CorrelationMatrix,
    noise_var: float,
    n_rx: int,
) -> Tuple[float, np.ndarray]:
    """
    f(W; S) and its gradient from a single Cholesky factorization of A.

    Returns:
        Tuple of (objective, gradient)

    Raises:
        NumericalFailureError: If A is not positive definite
    """
    matrix = as_matrix(w)
    effective_noise = noise_var * n_rx
    gram = signal_gram(np.asarray(s))
    factor = cholesky(information_matrix(matrix, gram, corr, effective_noise), "information matrix")

    identity = np.eye(corr.n_tx, dtype=complex)
    objective = float(np.real(np.trace(linalg.cho_solve(factor, identity))))

    once = linalg.cho_solve(factor, matrix @ gram)
    gradient = (-2.0 / effective_noise) * linalg.cho_solve(factor, once)
    return objective, gradient


def elmmse_gradient(
    w: PrecoderLike,
    s: np.ndarray,
    corr: CorrelationMatrix,
    noise_var: float,
    n_rx: int,
) -> np.ndarray:
    """
    Gradient of f(W; S) = tr(A^{-1}) with respect to W.

    With <X, Y> = Re tr(X^H Y) and A = R_H^{-1} + W S S^H W^H / (sigma_s^2 N_r),
    the first-order change is f(W + D) - f(W) = <G, D> + o(||D||) for

        G = -(2 / (sigma_s^2 N_r)) A^{-2} W S S^H.

    Args:
        w: Precoder
        s: Transmit signal, shape (n_tx, L)
        corr: Channel correlation
        noise_var: Noise variance sigma_s^2
        n_rx: Number of receive antennas

    Returns:
        Complex n_tx x n_tx gradient

    Raises:
        NumericalFailureError: If A is not positive definite
    """
    return objective_and_gradient(w, s, corr, noise_var, n_rx)[1]
