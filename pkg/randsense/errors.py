"""Exception hierarchy for RandSense."""

from typing import Optional


class RandSenseError(Exception):
    """Base exception for all RandSense errors."""
    pass


class InvalidParameterError(RandSenseError, ValueError):
    """Raised when a dimension, value or shape violates a model invariant."""

    def __init__(self, message: str, parameter: Optional[str] = None):
        super().__init__(message)
        self.parameter = parameter


class InfeasibleOrthogonalityError(InvalidParameterError):
    """Raised when orthogonal training is requested with frame_len < n_tx."""
    pass


class NumericalFailureError(RandSenseError, ArithmeticError):
    """Raised when a Hermitian solve fails or its residual exceeds tolerance."""

    def __init__(self, message: str, residual: Optional[float] = None):
        super().__init__(message)
        self.residual = residual


class ConfigParseError(RandSenseError):
    """Raised when an experiment document cannot be parsed or validated."""

    def __init__(self, message: str, field_path: Optional[str] = None):
        if field_path:
            message = f"{field_path}: {message}"
        super().__init__(message)
        self.field_path = field_path
