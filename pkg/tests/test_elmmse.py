"""Tests for the sample-average ELMMSE and its Jensen bound."""

import numpy as np
import pytest

from conftest import dense_conditional_mse, random_precoder
from randsense.core_model import gen_correlation, sample_signals
from randsense.elmmse import jensen_bound, jensen_gap, monte_carlo_elmmse, sample_objectives
from randsense.errors import InvalidParameterError
from randsense.models import SignalBatch, SignalKind, SystemConfig
from randsense.precoding import water_filling


class TestMonteCarloElmmse:
    def test_single_orthogonal_sample_equals_bound(self, system, corr, rng):
        w = random_precoder(rng, system.n_tx, system.power)
        batch = sample_signals(system, 1, SignalKind.DETERMINISTIC_ORTHOGONAL)
        estimate = monte_carlo_elmmse(w, batch, system, corr)
        assert estimate.count == 1
        assert estimate.std_error == 0.0
        assert estimate.mean == pytest.approx(jensen_bound(w, system, corr), rel=1e-12)

    def test_zero_precoder_gives_prior_trace(self, system, corr, gaussian_batch):
        estimate = monte_carlo_elmmse(np.zeros((4, 4)), gaussian_batch, system, corr)
        assert estimate.mean == pytest.approx(corr.trace, rel=1e-12)
        assert estimate.std_error == 0.0

    def test_matches_dense_reference(self, rng):
        system = SystemConfig(n_tx=4, n_rx=2, frame_len=4, power=10.0, noise_var=1.0)
        corr = gen_correlation(4, 1.0, 10.0, seed=13)
        batch = sample_signals(system, 500, SignalKind.GAUSSIAN, seed=8)
        w = random_precoder(rng, system.n_tx, system.power)

        expected = np.mean([dense_conditional_mse(w, s, corr.matrix, 1.0, 2) for s in batch])
        assert monte_carlo_elmmse(w, batch, system, corr).mean == pytest.approx(expected, rel=1e-10)

    def test_sample_order_and_threads_do_not_matter(self, system, corr, gaussian_batch, rng):
        w = random_precoder(rng, system.n_tx, system.power)
        reversed_batch = SignalBatch(samples=gaussian_batch.samples[::-1].copy(), kind=gaussian_batch.kind)

        serial = monte_carlo_elmmse(w, gaussian_batch, system, corr)
        assert monte_carlo_elmmse(w, reversed_batch, system, corr) == serial
        assert monte_carlo_elmmse(w, gaussian_batch, system, corr, n_jobs=4) == serial

    def test_rejects_mismatched_batch(self, system, corr):
        batch = sample_signals(system.with_frame_len(16), 3, SignalKind.GAUSSIAN, seed=0)
        with pytest.raises(InvalidParameterError, match="batch"):
            sample_objectives(np.eye(4), batch, system, corr)


class TestJensenBound:
    @pytest.mark.parametrize("frame_len", [8, 32])
    def test_bound_holds_for_random_precoders(self, desk_system, desk_corr, rng, frame_len):
        system = desk_system.with_frame_len(frame_len)
        batch = sample_signals(system, 500, SignalKind.GAUSSIAN, seed=frame_len)
        for _ in range(20):
            w = random_precoder(rng, system.n_tx, system.power, fill=float(rng.uniform(0.1, 1.0)))
            estimate, bound, gap = jensen_gap(w, batch, system, desk_corr)
            assert gap == estimate.mean - bound
            assert estimate.mean + 3 * estimate.std_error >= bound

    def test_gaussian_gap_is_significant_at_short_frames(self, system, corr):
        w = water_filling(system, corr).precoder
        batch = sample_signals(system.with_frame_len(system.n_tx), 500, SignalKind.GAUSSIAN, seed=6)
        estimate, _, gap = jensen_gap(w, batch, system.with_frame_len(system.n_tx), corr)
        assert gap > 3 * estimate.std_error

    def test_water_filling_bound_below_prior_trace(self, system, corr):
        wf = water_filling(system, corr)
        assert jensen_bound(wf.precoder, system, corr) < corr.trace

    @pytest.mark.slow
    def test_gap_shrinks_with_frame_length(self, desk_system, desk_corr):
        # Shorter frames reuse the leading snapshots of the longest one
        longest = sample_signals(desk_system.with_frame_len(256), 1000, SignalKind.GAUSSIAN, seed=256)
        gaps = []
        for frame_len in (8, 16, 32, 64, 128, 256):
            system = desk_system.with_frame_len(frame_len)
            w = water_filling(system, desk_corr).precoder
            batch = SignalBatch(samples=longest.samples[:, :, :frame_len].copy())
            gaps.append(jensen_gap(w, batch, system, desk_corr)[2])
        assert all(earlier > later for earlier, later in zip(gaps, gaps[1:]))
