"""Tests for data-independent precoding by stochastic gradient projection."""

import numpy as np
import pytest

from conftest import random_precoder
from randsense.core_model import sample_signals
from randsense.elmmse import monte_carlo_elmmse
from randsense.models import Precoder, ScaConfig, SgpConfig, SignalKind
from randsense.precoding import (
    data_dependent_suite,
    has_plateaued,
    initial_precoder,
    project_to_ball,
    sgp_optimize,
    water_filling,
)


class TestProjectToBall:
    def test_interior_point_unchanged(self, rng):
        w = random_precoder(rng, 3, 4.0, fill=0.5)
        np.testing.assert_array_equal(project_to_ball(w, 4.0).matrix, w)

    def test_scales_exterior_point(self, rng):
        w = random_precoder(rng, 3, 4.0, fill=4.0)
        projected = project_to_ball(w, 4.0)
        np.testing.assert_allclose(projected.matrix, w / 2.0, rtol=1e-12)
        assert projected.squared_norm == pytest.approx(4.0)

    def test_idempotent(self, rng):
        w = random_precoder(rng, 3, 1.0, fill=9.0)
        once = project_to_ball(w, 1.0).matrix
        np.testing.assert_allclose(project_to_ball(once, 1.0).matrix, once, rtol=1e-12)

    def test_non_expansive(self, rng):
        for _ in range(10000):
            a = random_precoder(rng, 2, 1.0, fill=float(rng.uniform(0.0, 4.0)))
            b = random_precoder(rng, 2, 1.0, fill=float(rng.uniform(0.0, 4.0)))
            distance = np.linalg.norm(project_to_ball(a, 1.0).matrix - project_to_ball(b, 1.0).matrix)
            assert distance <= np.linalg.norm(a - b) + 1e-12


class TestHasPlateaued:
    def test_needs_two_windows(self):
        assert not has_plateaued(np.ones(7), window=4, tol=1e-5)
        assert has_plateaued(np.ones(8), window=4, tol=1e-5)

    def test_compares_window_means(self):
        values = np.concatenate([np.full(4, 2.0), np.full(4, 1.0)])
        assert not has_plateaued(values, window=4, tol=0.5)
        assert has_plateaued(values, window=4, tol=1.5)


class TestSgpOptimize:
    def test_zero_start_is_stationary(self, system, corr):
        cfg = SgpConfig(max_iters=100, window=5)
        precoder, trace = sgp_optimize(system, corr, Precoder.zeros(system.n_tx), cfg, seed=1)
        assert trace.converged
        assert len(trace) == 10
        assert not np.any(precoder.matrix)
        np.testing.assert_allclose(trace.objectives, corr.trace, rtol=1e-12)

    def test_feasible_and_deterministic(self, system, corr):
        cfg = SgpConfig(max_iters=30)
        start = initial_precoder(system, corr, "uniform")
        first, trace = sgp_optimize(system, corr, start, cfg, seed=5)
        second, _ = sgp_optimize(system, corr, start, cfg, seed=5)
        threaded, _ = sgp_optimize(system, corr, start, cfg, seed=5, n_jobs=3)

        assert first.is_feasible(system.power)
        np.testing.assert_array_equal(first.matrix, second.matrix)
        np.testing.assert_array_equal(first.matrix, threaded.matrix)
        assert [record.step_size for record in trace.records[:2]] == [10 / 11, 10 / 12]

    def test_different_seeds_differ(self, system, corr):
        cfg = SgpConfig(max_iters=10)
        start = initial_precoder(system, corr, "uniform")
        a, _ = sgp_optimize(system, corr, start, cfg, seed=1)
        b, _ = sgp_optimize(system, corr, start, cfg, seed=2)
        assert not np.allclose(a.matrix, b.matrix)

    @pytest.mark.slow
    def test_precoder_ordering(self, desk_system, desk_corr):
        """Data-dependent <= SGP <= water-filling on a shared evaluation batch."""
        wf = water_filling(desk_system, desk_corr).precoder
        sgp, _ = sgp_optimize(desk_system, desk_corr, wf, SgpConfig(max_iters=500), seed=7)
        batch = sample_signals(desk_system, 100, SignalKind.GAUSSIAN, seed=99)

        wf_estimate = monte_carlo_elmmse(wf, batch, desk_system, desk_corr)
        sgp_estimate = monte_carlo_elmmse(sgp, batch, desk_system, desk_corr)
        suite = data_dependent_suite(batch, wf, ScaConfig(), desk_system, desk_corr)

        assert sgp_estimate.mean <= wf_estimate.mean + 3 * wf_estimate.std_error
        assert suite.mean <= sgp_estimate.mean + 3 * sgp_estimate.std_error
