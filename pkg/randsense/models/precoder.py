"""Precoder, metric and optimizer-trace data models."""

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Union

import numpy as np

from randsense.errors import InvalidParameterError

FEASIBILITY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Precoder:
    """
    A complex n_tx x n_tx precoding matrix W.

    When ``power`` is given, membership in the Frobenius ball ||W||_F^2 <= P
    is checked at construction.
    """

    matrix: np.ndarray
    power: Optional[float] = None

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise InvalidParameterError(f"precoder must be square, got shape {matrix.shape}", parameter="matrix")
        if not np.all(np.isfinite(matrix)):
            raise InvalidParameterError("precoder has non-finite entries", parameter="matrix")
        object.__setattr__(self, "matrix", matrix)

        if self.power is not None and not self.is_feasible(self.power):
            raise InvalidParameterError(
                f"precoder power {self.squared_norm:.6g} exceeds budget {self.power:.6g}", parameter="matrix"
            )

    @classmethod
    def zeros(cls, n_tx: int) -> "Precoder":
        return cls(np.zeros((n_tx, n_tx), dtype=complex))

    @property
    def n_tx(self) -> int:
        return self.matrix.shape[0]

    @property
    def squared_norm(self) -> float:
        """||W||_F^2."""
        return float(np.sum(np.abs(self.matrix) ** 2))

    def is_feasible(self, power: float, tol: float = FEASIBILITY_TOL) -> bool:
        return self.squared_norm <= power + tol


PrecoderLike = Union[Precoder, np.ndarray]


def as_matrix(w: PrecoderLike) -> np.ndarray:
    """Return the raw matrix of a Precoder or array."""
    return w.matrix if isinstance(w, Precoder) else np.asarray(w, dtype=complex)


@dataclass(frozen=True, eq=False)
class EstimateReport:
    """Outcome of estimating one channel realization."""

    estimate: np.ndarray
    squared_error: float
    theoretical_mse: float


@dataclass(frozen=True)
class ElmmseEstimate:
    """Sample-average ELMMSE with its standard error."""

    mean: float
    std_error: float
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise InvalidParameterError("estimate needs at least one sample", parameter="count")
        if not (self.mean > 0 and math.isfinite(self.mean)):
            raise InvalidParameterError(f"ELMMSE mean must be finite and positive, got {self.mean}")
        if self.std_error < 0:
            raise InvalidParameterError(f"standard error must be nonnegative, got {self.std_error}")

    @classmethod
    def from_values(cls, values: np.ndarray) -> "ElmmseEstimate":
        """
        Summarize per-sample objective values.

        The sum is exactly rounded (``math.fsum``), so the mean does not depend
        on sample order or on how the values were computed in parallel.
        """
        values = np.asarray(values, dtype=float).ravel()
        count = values.size
        if count == 0:
            raise InvalidParameterError("estimate needs at least one sample", parameter="count")
        if np.all(values == values[0]):
            return cls(mean=float(values[0]), std_error=0.0, count=count)
        mean = math.fsum(values) / count
        if count < 2:
            return cls(mean=mean, std_error=0.0, count=count)
        variance = math.fsum((values - mean) ** 2) / (count - 1)
        return cls(mean=mean, std_error=math.sqrt(variance / count), count=count)


@dataclass(frozen=True, eq=False)
class WaterFillingResult:
    """Water-filling precoder with its water level and per-direction powers."""

    precoder: Precoder
    water_level: float
    active_set: np.ndarray
    powers: np.ndarray


@dataclass(frozen=True)
class IterationRecord:
    """One optimizer iteration."""

    index: int
    objective: float
    step_size: float
    descent_gap: float


@dataclass
class ConvergenceTrace:
    """
    Per-iteration record of an SCA or SGP run.

    For SCA, ``descent_gap`` is g(W') = <grad, W' - W>; for SGP it is the
    Frobenius norm of the mini-batch gradient.
    """

    algorithm: str = ""
    initial_objective: Optional[float] = None
    records: List[IterationRecord] = field(default_factory=list)
    wall_clock: float = 0.0
    converged: bool = False

    def append(self, index: int, objective: float, step_size: float, descent_gap: float) -> None:
        self.records.append(IterationRecord(int(index), float(objective), float(step_size), float(descent_gap)))

    def __len__(self) -> int:
        return len(self.records)

    @property
    def objectives(self) -> np.ndarray:
        return np.array([record.objective for record in self.records], dtype=float)

    @property
    def final_objective(self) -> Optional[float]:
        if self.records:
            return self.records[-1].objective
        return self.initial_objective

    def is_non_increasing(self, tol: float = 0.0) -> bool:
        values = self.objectives
        if self.initial_objective is not None:
            values = np.concatenate([[self.initial_objective], values])
        return bool(np.all(np.diff(values) <= tol))

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return asdict(self)


@dataclass(frozen=True)
class LineSearchConfig:
    """Exact line search: coarse grid then bounded scalar refinement."""

    grid_points: int = 33
    refine_iters: int = 40

    def __post_init__(self):
        if self.grid_points < 2:
            raise InvalidParameterError("line search needs at least 2 grid points", parameter="grid_points")
        if self.refine_iters < 0:
            raise InvalidParameterError("refine_iters must be >= 0", parameter="refine_iters")


@dataclass(frozen=True)
class ScaConfig:
    """Successive convex approximation settings (defaults: xi = -0.1, t_max = 30)."""

    max_iters: int = 30
    stop_gap: float = -0.1
    line_search: LineSearchConfig = field(default_factory=LineSearchConfig)

    def __post_init__(self):
        if self.max_iters < 1:
            raise InvalidParameterError("max_iters must be >= 1", parameter="max_iters")
        if not self.stop_gap < 0:
            raise InvalidParameterError(f"stop_gap must be negative, got {self.stop_gap}", parameter="stop_gap")


@dataclass(frozen=True)
class SgpConfig:
    """
    Stochastic gradient projection settings.

    Defaults: mini-batch of 10, r_max = 2000, epsilon = 1e-5 and step size
    eta(r) = a / (a + r) with a = 10. Convergence compares trailing windows of
    per-batch objective means.
    """

    batch_size: int = 10
    max_iters: int = 2000
    tol: float = 1e-5
    step_a: float = 10.0
    window: int = 20

    def __post_init__(self):
        if self.batch_size < 1:
            raise InvalidParameterError("batch_size must be >= 1", parameter="batch_size")
        if self.max_iters < 1:
            raise InvalidParameterError("max_iters must be >= 1", parameter="max_iters")
        if not self.tol > 0:
            raise InvalidParameterError(f"tol must be positive, got {self.tol}", parameter="tol")
        if not self.step_a > 0:
            raise InvalidParameterError(f"step_a must be positive, got {self.step_a}", parameter="step_a")
        if self.window < 1:
            raise InvalidParameterError("window must be >= 1", parameter="window")

    def step_size(self, iteration: int) -> float:
        """eta(r) = a / (a + r)."""
        return self.step_a / (self.step_a + iteration)


@dataclass(frozen=True, eq=False)
class DataDependentResult:
    """
    Per-sample SCA precoders for a signal batch.

    ``objectives[n]`` is f(W_n*; S_n); ``estimate`` summarizes them as the
    data-dependent ELMMSE.
    """

    precoders: List[Precoder]
    objectives: np.ndarray
    traces: List[ConvergenceTrace]
    estimate: "ElmmseEstimate"

    @property
    def mean(self) -> float:
        return self.estimate.mean

    @property
    def std_error(self) -> float:
        return self.estimate.std_error

    def __len__(self) -> int:
        return len(self.precoders)
