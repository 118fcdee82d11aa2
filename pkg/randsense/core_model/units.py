"""Power and SNR unit conversions."""

import math

from randsense.models.system import SystemConfig


def dbm_to_mw(dbm: float) -> float:
    """10^(dBm/10)."""
    return 10.0 ** (dbm / 10.0)


def mw_to_dbm(mw: float) -> float:
    """10 log10(mW)."""
    return 10.0 * math.log10(mw)


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def power_for_snr(snr_db: float, noise_var: float, frame_len: int) -> float:
    """
    Transmit power P that realizes a target transmit SNR L * P / sigma_s^2.

    Args:
        snr_db: Target SNR in dB
        noise_var: Noise variance sigma_s^2 (linear)
        frame_len: Frame length L

    Returns:
        Power P (linear, same unit as ``noise_var``)
    """
    return db_to_linear(snr_db) * noise_var / frame_len


def snr_db(config: SystemConfig) -> float:
    """Transmit SNR of a configuration in dB."""
    return 10.0 * math.log10(config.transmit_snr)
