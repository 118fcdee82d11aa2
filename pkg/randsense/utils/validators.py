"""Input validation utilities for RandSense.

Every validator returns ``(is_valid, error_message)``; callers decide whether
to raise. Model constructors turn failures into ``InvalidParameterError``.
"""

import math
import os
from pathlib import Path
from typing import Optional, Sequence, Tuple

import numpy as np


def validate_log_level(level: str) -> Tuple[bool, Optional[str]]:
    """
    Validate logging level string.

    Args:
        level: Log level string (DEBUG, INFO, WARNING, ERROR, CRITICAL)

    Returns:
        Tuple of (is_valid, error_message)
    """
    valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]

    if not level or not isinstance(level, str):
        return False, "Log level cannot be empty"

    if level.upper() not in valid_levels:
        return False, f"Invalid log level: {level}. Must be one of {valid_levels}"

    return True, None


def validate_positive_integer(value: int, name: str = "value", min_value: int = 1) -> Tuple[bool, Optional[str]]:
    """
    Validate that a value is an integer no smaller than ``min_value``.

    Args:
        value: Value to validate
        name: Name of the parameter (for error messages)
        min_value: Minimum allowed value (default: 1)

    Returns:
        Tuple of (is_valid, error_message)
    """
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        return False, f"{name} must be an integer, got {type(value).__name__}"

    if value < min_value:
        return False, f"{name} must be >= {min_value}, got {value}"

    return True, None


def validate_positive_real(value: float, name: str = "value", allow_zero: bool = False) -> Tuple[bool, Optional[str]]:
    """
    Validate that a value is a finite real number greater than zero.

    Args:
        value: Value to validate
        name: Name of the parameter (for error messages)
        allow_zero: Accept exactly zero as well

    Returns:
        Tuple of (is_valid, error_message)
    """
    try:
        number = float(value)
    except (TypeError, ValueError):
        return False, f"{name} must be a real number, got {value!r}"

    if not math.isfinite(number):
        return False, f"{name} must be finite, got {number}"

    if number < 0 or (number == 0 and not allow_zero):
        bound = ">= 0" if allow_zero else "> 0"
        return False, f"{name} must be {bound}, got {number}"

    return True, None


def validate_shape(array: np.ndarray, expected: Sequence[int], name: str = "array") -> Tuple[bool, Optional[str]]:
    """
    Validate that an array has exactly the expected shape.

    Args:
        array: Array to check
        expected: Expected shape
        name: Name of the array (for error messages)

    Returns:
        Tuple of (is_valid, error_message)
    """
    shape = np.shape(array)
    if tuple(shape) != tuple(expected):
        return False, f"{name} must have shape {tuple(expected)}, got {tuple(shape)}"
    return True, None


def validate_hermitian(matrix: np.ndarray, tol: float = 1e-10, name: str = "matrix") -> Tuple[bool, Optional[str]]:
    """
    Validate that a square matrix is Hermitian within a relative Frobenius tolerance.

    Args:
        matrix: Square complex matrix
        tol: Allowed ``||M - M^H||_F / ||M||_F``
        name: Name of the matrix (for error messages)

    Returns:
        Tuple of (is_valid, error_message)
    """
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False, f"{name} must be square, got shape {matrix.shape}"

    scale = np.linalg.norm(matrix)
    if scale == 0:
        return True, None

    asymmetry = np.linalg.norm(matrix - matrix.conj().T) / scale
    if asymmetry > tol:
        return False, f"{name} is not Hermitian (relative asymmetry {asymmetry:.3e} > {tol:.1e})"
    return True, None


def validate_output_path(path: str) -> Tuple[bool, Optional[str]]:
    """
    Validate that a file can be written at ``path``.

    The parent directory may not exist yet, but its closest existing ancestor
    must be a writable directory.

    Args:
        path: Output file path

    Returns:
        Tuple of (is_valid, error_message)
    """
    if not path or not isinstance(path, str):
        return False, "Path cannot be empty"

    path_obj = Path(path)
    if path_obj.is_dir():
        return False, f"Path is a directory: {path}"

    ancestor = path_obj.absolute().parent
    while not ancestor.exists():
        ancestor = ancestor.parent

    if not ancestor.is_dir():
        return False, f"Parent is not a directory: {ancestor}"
    if not os.access(ancestor, os.W_OK):
        return False, f"Directory is not writable: {ancestor}"

    return True, None
