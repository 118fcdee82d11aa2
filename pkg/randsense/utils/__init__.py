"""Utility modules for RandSense."""

from randsense.utils.logger import (
    setup_logger,
    get_logger,
    log_error_with_context,
    StructuredFormatter
)

from randsense.utils.validators import (
    validate_log_level,
    validate_positive_integer,
    validate_positive_real,
    validate_shape,
    validate_hermitian,
    validate_output_path
)

from randsense.utils.file_utils import (
    ensure_parent_directory,
    sibling_path
)

from randsense.utils.parallel import parallel_map

from randsense.utils.linalg import (
    hermitize,
    crandn,
    inner,
    relative_frobenius,
    cholesky,
    hermitian_solve,
    trace_inverse
)

__all__ = [
    # Logger
    'setup_logger',
    'get_logger',
    'log_error_with_context',
    'StructuredFormatter',

    # Validators
    'validate_log_level',
    'validate_positive_integer',
    'validate_positive_real',
    'validate_shape',
    'validate_hermitian',
    'validate_output_path',

    # File utilities
    'ensure_parent_directory',
    'sibling_path',

    # Linear algebra
    'hermitize',
    'crandn',
    'inner',
    'relative_frobenius',
    'cholesky',
    'hermitian_solve',
    'trace_inverse',

    # Parallelism
    'parallel_map',
]
