"""Shared fixtures for the RandSense test suite."""

import numpy as np
import pytest

from randsense.core_model.generators import gen_correlation, sample_signals
from randsense.models.system import CorrelationMatrix, SystemConfig


def random_precoder(rng: np.random.Generator, n_tx: int, power: float, fill: float = 1.0) -> np.ndarray:
    """Random complex matrix with ||W||_F^2 = fill * power."""
    w = rng.standard_normal((n_tx, n_tx)) + 1j * rng.standard_normal((n_tx, n_tx))
    return w * np.sqrt(fill * power) / np.linalg.norm(w)


def dense_conditional_mse(w, s, corr_matrix, noise_var, n_rx) -> float:
    """Reference f(W; S) through an explicit dense inverse."""
    a = np.linalg.inv(corr_matrix) + w @ s @ s.conj().T @ w.conj().T / (noise_var * n_rx)
    return float(np.real(np.trace(np.linalg.inv(a))))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240917)


@pytest.fixture
def system() -> SystemConfig:
    """Small instance: Nt=4, Nr=2, L=8, P=10, sigma^2=1."""
    return SystemConfig(n_tx=4, n_rx=2, frame_len=8, power=10.0, noise_var=1.0)


@pytest.fixture
def corr(system) -> CorrelationMatrix:
    return gen_correlation(system.n_tx, 1.0, 10.0, seed=7)


@pytest.fixture
def desk_system() -> SystemConfig:
    """Desk-scale instance: Nt=8, Nr=4, L=8, 20 dB transmit SNR."""
    return SystemConfig(n_tx=8, n_rx=4, frame_len=8, power=12.5, noise_var=1.0)


@pytest.fixture
def desk_corr(desk_system) -> CorrelationMatrix:
    return gen_correlation(desk_system.n_tx, 1.0, 10.0, seed=11)


@pytest.fixture
def gaussian_batch(system):
    return sample_signals(system, 50, "gaussian", seed=3)
