"""Counter-based seed derivation.

A master seed plus a tuple of integer keys names one independent random
stream (numpy ``SeedSequence`` spawn keys). Sample ``n`` of a batch always
comes from key ``n``, so results do not depend on batch size, ordering or
thread count.
"""

from enum import IntEnum
from typing import Tuple

import numpy as np

from randsense.errors import InvalidParameterError
from randsense.utils.validators import validate_positive_integer


class Stream(IntEnum):
    """Top-level stream keys used by the experiment pipeline."""

    CORRELATION = 0
    EVALUATION = 1
    SGP_TRAINING = 2
    TRACE_SIGNAL = 3


def _seed_sequence(seed: int, keys: Tuple[int, ...]) -> np.random.SeedSequence:
    is_valid, error = validate_positive_integer(seed, "seed", min_value=0)
    if not is_valid:
        raise InvalidParameterError(error, parameter="seed")
    if seed >= 2**64:
        raise InvalidParameterError("seed must fit in 64 bits", parameter="seed")
    for key in keys:
        is_valid, error = validate_positive_integer(key, "stream key", min_value=0)
        if not is_valid:
            raise InvalidParameterError(error, parameter="seed")
    return np.random.SeedSequence(int(seed), spawn_key=tuple(int(k) for k in keys))


def substream(seed: int, *keys: int) -> np.random.Generator:
    """
    Random generator for the stream named by ``(seed, *keys)``.

    Args:
        seed: Master seed (non-negative, up to 64 bits)
        *keys: Non-negative integer counters

    Returns:
        Independent ``numpy.random.Generator``

    Raises:
        InvalidParameterError: If the seed or a key is negative or not an integer
    """
    return np.random.default_rng(_seed_sequence(seed, keys))


def derive_seed(master_seed: int, *keys: int) -> int:
    """
    Derive a 64-bit child seed for the stream named by ``(master_seed, *keys)``.

    Args:
        master_seed: Master seed
        *keys: Non-negative integer counters

    Returns:
        Child seed as a Python int in [0, 2**64)
    """
    sequence = _seed_sequence(master_seed, keys)
    return int(sequence.generate_state(1, dtype=np.uint64)[0])
