"""System Model - the scalar world, channel statistics, signals and scenes."""

from dataclasses import asdict, dataclass, replace
from enum import Enum
from functools import cached_property
from typing import Any, Dict, Iterator

import numpy as np

from randsense.errors import InfeasibleOrthogonalityError, InvalidParameterError
from randsense.utils.linalg import relative_frobenius
from randsense.utils.validators import (
    validate_hermitian,
    validate_positive_integer,
    validate_positive_real,
    validate_shape,
)

HERMITIAN_TOL = 1e-10
RECONSTRUCTION_TOL = 1e-8
ORTHOGONALITY_TOL = 1e-8


def _require(check, parameter: str) -> None:
    is_valid, error = check
    if not is_valid:
        raise InvalidParameterError(error, parameter=parameter)


@dataclass(frozen=True)
class SystemConfig:
    """
    Dimensions, power and noise shared by every operation.

    Power and noise are linear (mW); dBm conversion happens at the config
    parsing boundary.
    """

    n_tx: int
    n_rx: int
    frame_len: int
    power: float
    noise_var: float
    master_seed: int = 0

    def __post_init__(self):
        for name in ("n_tx", "n_rx", "frame_len"):
            _require(validate_positive_integer(getattr(self, name), name), name)
        _require(validate_positive_real(self.power, "power"), "power")
        _require(validate_positive_real(self.noise_var, "noise_var"), "noise_var")
        _require(validate_positive_integer(self.master_seed, "master_seed", min_value=0), "master_seed")
        if self.master_seed >= 2**64:
            raise InvalidParameterError("master_seed must fit in 64 bits", parameter="master_seed")
        if not np.isfinite(self.transmit_snr) or self.transmit_snr <= 0:
            raise InvalidParameterError(f"transmit SNR is not finite and positive: {self.transmit_snr}")

    @property
    def transmit_snr(self) -> float:
        """L * P / sigma_s^2 (linear)."""
        return self.frame_len * self.power / self.noise_var

    @property
    def effective_noise(self) -> float:
        """sigma_s^2 * N_r, the noise scaling of the vectorized estimation problem."""
        return self.noise_var * self.n_rx

    def with_frame_len(self, frame_len: int) -> "SystemConfig":
        return replace(self, frame_len=frame_len)

    def with_power(self, power: float) -> "SystemConfig":
        return replace(self, power=power)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for serialization."""
        return asdict(self)


def transmit_snr(config: SystemConfig) -> float:
    """Transmit SNR L * P / sigma_s^2 of a configuration (linear)."""
    return config.transmit_snr


@dataclass(frozen=True, eq=False)
class CorrelationMatrix:
    """
    Channel correlation R_H = E[H^H H] with its eigendecomposition Q diag(eigvals) Q^H.

    Eigenvalues are stored in descending order.
    """

    matrix: np.ndarray
    eigvecs: np.ndarray
    eigvals: np.ndarray

    def __post_init__(self):
        n = self.matrix.shape[0] if self.matrix.ndim == 2 else -1
        _require(validate_shape(self.matrix, (n, n), "matrix"), "matrix")
        _require(validate_shape(self.eigvecs, (n, n), "eigvecs"), "eigvecs")
        _require(validate_shape(self.eigvals, (n,), "eigvals"), "eigvals")
        _require(validate_hermitian(self.matrix, HERMITIAN_TOL, "correlation matrix"), "matrix")

        if np.iscomplexobj(self.eigvals) or not np.all(np.isfinite(self.eigvals)):
            raise InvalidParameterError("eigenvalues must be finite reals", parameter="eigvals")
        if np.any(self.eigvals <= 0):
            raise InvalidParameterError(
                f"correlation matrix must be positive definite, min eigenvalue {self.eigvals.min():.3e}",
                parameter="eigvals",
            )
        if np.any(np.diff(self.eigvals) > 0):
            raise InvalidParameterError("eigenvalues must be sorted in descending order", parameter="eigvals")

        error = relative_frobenius(self.reconstruct(), self.matrix)
        if error > RECONSTRUCTION_TOL:
            raise InvalidParameterError(
                f"eigendecomposition does not reconstruct the matrix (relative error {error:.3e})",
                parameter="eigvecs",
            )

    @classmethod
    def from_matrix(cls, matrix: np.ndarray) -> "CorrelationMatrix":
        """Build from a Hermitian positive-definite matrix, computing its eigendecomposition."""
        matrix = np.asarray(matrix, dtype=complex)
        eigvals, eigvecs = np.linalg.eigh(0.5 * (matrix + matrix.conj().T))
        return cls(matrix=matrix, eigvecs=eigvecs[:, ::-1].copy(), eigvals=eigvals[::-1].copy())

    @classmethod
    def from_eigen(cls, eigvals: np.ndarray, eigvecs: np.ndarray) -> "CorrelationMatrix":
        """Build from eigenvalues and a unitary eigenvector matrix (columns), sorting descending."""
        eigvals = np.asarray(eigvals, dtype=float)
        order = np.argsort(eigvals, kind="stable")[::-1]
        eigvals = eigvals[order]
        eigvecs = np.asarray(eigvecs, dtype=complex)[:, order]
        matrix = (eigvecs * eigvals) @ eigvecs.conj().T
        matrix = 0.5 * (matrix + matrix.conj().T)
        return cls(matrix=matrix, eigvecs=eigvecs, eigvals=eigvals)

    @property
    def n_tx(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.sum(self.eigvals))

    def reconstruct(self) -> np.ndarray:
        """Q diag(eigvals) Q^H."""
        return (self.eigvecs * self.eigvals) @ self.eigvecs.conj().T

    @cached_property
    def inverse(self) -> np.ndarray:
        """R_H^{-1} from the cached eigendecomposition."""
        inv = (self.eigvecs / self.eigvals) @ self.eigvecs.conj().T
        return 0.5 * (inv + inv.conj().T)

    @cached_property
    def sqrt(self) -> np.ndarray:
        """Hermitian square root R_H^{1/2}."""
        root = (self.eigvecs * np.sqrt(self.eigvals)) @ self.eigvecs.conj().T
        return 0.5 * (root + root.conj().T)


class SignalKind(str, Enum):
    """Signal families a batch can be drawn from."""

    GAUSSIAN = "gaussian"
    DETERMINISTIC_ORTHOGONAL = "deterministic_orthogonal"


@dataclass(frozen=True, eq=False)
class SignalBatch:
    """
    A batch of N transmit-signal realizations, stacked as an (N, n_tx, L) array.

    All samples share one kind; mixed batches are not representable.
    """

    samples: np.ndarray
    kind: SignalKind = SignalKind.GAUSSIAN

    def __post_init__(self):
        if self.samples.ndim != 3:
            raise InvalidParameterError(
                f"samples must be stacked as (count, n_tx, frame_len), got shape {self.samples.shape}",
                parameter="samples",
            )
        if self.samples.shape[0] < 1:
            raise InvalidParameterError("signal batch must not be empty", parameter="samples")
        object.__setattr__(self, "kind", SignalKind(self.kind))

        if self.kind is SignalKind.DETERMINISTIC_ORTHOGONAL:
            _, n_tx, frame_len = self.samples.shape
            if frame_len < n_tx:
                raise InfeasibleOrthogonalityError(
                    f"orthogonal training needs frame_len >= n_tx, got L={frame_len} < Nt={n_tx}",
                    parameter="frame_len",
                )
            gram = self.samples @ self.samples.conj().transpose(0, 2, 1) / frame_len
            deviation = np.max(np.abs(gram - np.eye(n_tx)))
            if deviation > ORTHOGONALITY_TOL:
                raise InvalidParameterError(
                    f"samples violate (1/L) S S^H = I (max deviation {deviation:.3e})",
                    parameter="samples",
                )

    @property
    def count(self) -> int:
        return self.samples.shape[0]

    @property
    def n_tx(self) -> int:
        return self.samples.shape[1]

    @property
    def frame_len(self) -> int:
        return self.samples.shape[2]

    def __len__(self) -> int:
        return self.count

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.samples)

    def __getitem__(self, index: int) -> np.ndarray:
        return self.samples[index]


@dataclass(frozen=True, eq=False)
class SensingScene:
    """One channel (N_r x N_t) and noise (N_r x L) realization."""

    channel: np.ndarray
    noise: np.ndarray

    def __post_init__(self):
        if self.channel.ndim != 2 or self.noise.ndim != 2:
            raise InvalidParameterError("channel and noise must be matrices")
        if self.channel.shape[0] != self.noise.shape[0]:
            raise InvalidParameterError(
                f"channel has {self.channel.shape[0]} rows but noise has {self.noise.shape[0]}",
                parameter="noise",
            )

    @property
    def n_rx(self) -> int:
        return self.channel.shape[0]

    @property
    def n_tx(self) -> int:
        return self.channel.shape[1]

    @property
    def frame_len(self) -> int:
        return self.noise.shape[1]

    def matches(self, config: SystemConfig) -> bool:
        """True when the scene dimensions agree with a system configuration."""
        return (self.n_rx, self.n_tx, self.frame_len) == (config.n_rx, config.n_tx, config.frame_len)
