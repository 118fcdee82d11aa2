"""Core sensing model: random generation of statistics, signals and scenes."""

from .generators import gen_correlation, haar_unitary, orthogonal_training, sample_scene, sample_signals
from .seeding import Stream, derive_seed, substream
from .sensing import forward_model
from .units import db_to_linear, dbm_to_mw, mw_to_dbm, power_for_snr, snr_db

__all__ = [
    "gen_correlation",
    "haar_unitary",
    "orthogonal_training",
    "sample_scene",
    "sample_signals",
    "Stream",
    "derive_seed",
    "substream",
    "forward_model",
    "db_to_linear",
    "dbm_to_mw",
    "mw_to_dbm",
    "power_for_snr",
    "snr_db",
]
