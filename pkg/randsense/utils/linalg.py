"""Hermitian linear-algebra helpers shared by the estimation and precoding stages."""

from typing import Tuple

import numpy as np
from scipy import linalg

from randsense.errors import NumericalFailureError

RESIDUAL_TOL = 1e-6

CholeskyFactor = Tuple[np.ndarray, bool]


def hermitize(matrix: np.ndarray) -> np.ndarray:
    """Return (M + M^H) / 2."""
    return 0.5 * (matrix + matrix.conj().T)


def crandn(rng: np.random.Generator, shape: Tuple[int, ...]) -> np.ndarray:
    """
    Draw circularly-symmetric CN(0, 1) entries (variance 1/2 per real component).

    Args:
        rng: Random generator
        shape: Output shape

    Returns:
        Complex array of the given shape
    """
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def inner(a: np.ndarray, b: np.ndarray) -> float:
    """Real inner product <A, B> = Re tr(A^H B)."""
    return float(np.real(np.vdot(a, b)))


def relative_frobenius(actual: np.ndarray, reference: np.ndarray) -> float:
    """||actual - reference||_F / ||reference||_F (absolute error when the reference is zero)."""
    scale = np.linalg.norm(reference)
    error = np.linalg.norm(actual - reference)
    return float(error / scale) if scale > 0 else float(error)


def cholesky(matrix: np.ndarray, what: str = "matrix") -> CholeskyFactor:
    """
    Cholesky-factor a Hermitian matrix after symmetrization.

    Args:
        matrix: Hermitian positive-definite matrix
        what: Description used in the error message

    Returns:
        Factor usable with ``scipy.linalg.cho_solve``

    Raises:
        NumericalFailureError: If the matrix is not positive definite
    """
    try:
        return linalg.cho_factor(hermitize(matrix), lower=True, check_finite=True)
    except (linalg.LinAlgError, ValueError) as e:
        raise NumericalFailureError(f"{what} is not positive definite: {e}") from e


def hermitian_solve(matrix: np.ndarray, rhs: np.ndarray, what: str = "system") -> np.ndarray:
    """
    Solve M X = B for Hermitian positive-definite M, checking the residual.

    Args:
        matrix: Hermitian positive-definite matrix M
        rhs: Right-hand side B
        what: Description used in error messages

    Returns:
        Solution X

    Raises:
        NumericalFailureError: If factorization fails or the relative residual exceeds 1e-6
    """
    symmetric = hermitize(matrix)
    factor = cholesky(symmetric, what)
    solution = linalg.cho_solve(factor, rhs)

    rhs_norm = np.linalg.norm(rhs)
    if rhs_norm > 0:
        residual = float(np.linalg.norm(symmetric @ solution - rhs) / rhs_norm)
        if not np.isfinite(residual) or residual > RESIDUAL_TOL:
            raise NumericalFailureError(
                f"{what} solve residual {residual:.3e} exceeds {RESIDUAL_TOL:.0e}", residual=residual
            )
    return solution


def trace_inverse(matrix: np.ndarray, what: str = "matrix") -> float:
    """
    Compute tr(M^{-1}) for Hermitian positive-definite M through its Cholesky factor.

    With M = C C^H, tr(M^{-1}) = ||C^{-1}||_F^2.

    Args:
        matrix: Hermitian positive-definite matrix
        what: Description used in error messages

    Returns:
        The trace of the inverse
    """
    lower, _ = cholesky(matrix, what)
    identity = np.eye(lower.shape[0], dtype=lower.dtype)
    inverse_factor = linalg.solve_triangular(lower, identity, lower=True, check_finite=False)
    return float(np.sum(np.abs(inverse_factor) ** 2))
