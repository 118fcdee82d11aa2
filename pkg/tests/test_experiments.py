"""Tests for experiment documents, CSV export and the experiment pipeline."""

from pathlib import Path

import numpy as np
import pytest
import yaml

from randsense.errors import ConfigParseError
from randsense.experiments import (
    RESULT_COLUMNS,
    TIMING_COLUMNS,
    ExperimentPipeline,
    ResultRow,
    Scenario,
    build_config,
    emit_config,
    export_trace,
    parse_config,
    read_results,
    read_trace,
    run_experiment,
    run_trace,
    write_config,
    write_results,
)
from randsense.models import ConvergenceTrace, SignalKind
from randsense.precoding import InitKind

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def _document(tmp_path, **overrides):
    document = {
        "scenario": "asymptotic_L",
        "sweep": [4, 16],
        "output_path": str(tmp_path / "out.csv"),
        "n_tx": 2,
        "n_rx": 1,
        "frame_len": 4,
        "power_mw": 5.0,
        "noise_var_mw": 1.0,
        "precoders": ["water_filling"],
        "batch_count": 20,
        "master_seed": 11,
        "sca_max_iters": 3,
        "sgp_max_iters": 5,
        "sgp_batch_size": 2,
    }
    document.update(overrides)
    return document


# ============================================================================
# EXPERIMENT DOCUMENTS
# ============================================================================


class TestBuildConfig:
    def test_defaults(self):
        config = build_config({"scenario": "snr_sweep", "sweep": [0, 10], "output_path": "x.csv"})
        assert config.scenario is Scenario.SNR_SWEEP
        assert config.system.power == pytest.approx(1000.0)
        assert config.system.noise_var == pytest.approx(1.0)
        assert (config.system.n_tx, config.system.n_rx, config.system.frame_len) == (8, 4, 32)
        assert config.precoders == ("water_filling", "sgp", "data_dependent")
        assert config.batch_count == 100
        assert (config.sca.max_iters, config.sca.stop_gap) == (30, -0.1)
        assert (config.sgp.max_iters, config.sgp.tol) == (2000, 1e-5)
        assert config.signal_kind is SignalKind.GAUSSIAN
        assert config.init is InitKind.WATER_FILLING

    def test_dbm_keys(self, tmp_path):
        document = _document(tmp_path, power_dbm=20.0, noise_dbm=-10.0)
        del document["power_mw"], document["noise_var_mw"]
        config = build_config(document)
        assert config.system.power == pytest.approx(100.0)
        assert config.system.noise_var == pytest.approx(0.1)

    def test_rejects_unknown_key(self, tmp_path):
        with pytest.raises(ConfigParseError) as excinfo:
            build_config(_document(tmp_path, bogus=1))
        assert excinfo.value.field_path == "bogus"

    def test_rejects_type_mismatch(self, tmp_path):
        with pytest.raises(ConfigParseError) as excinfo:
            build_config(_document(tmp_path, n_tx="8"))
        assert excinfo.value.field_path == "n_tx"

    @pytest.mark.parametrize("overrides", [
        {"power_dbm": 30.0},
        {"scenario": "nonsense"},
        {"sweep": [4.5]},
        {"sweep": [4, 4]},
        {"sweep": []},
        {"precoders": ["water_filling", "water_filling"]},
        {"precoders": ["zero_forcing"]},
        {"eig_low": 5.0, "eig_high": 1.0},
        {"signal_kind": "deterministic_orthogonal", "sweep": [1, 16]},
        {"sca_stop_gap": 0.1},
        {"master_seed": -1},
    ])
    def test_rejects_invalid_documents(self, tmp_path, overrides):
        with pytest.raises(ConfigParseError):
            build_config(_document(tmp_path, **overrides))

    def test_rejects_unreachable_snr(self, tmp_path):
        with pytest.raises(ConfigParseError, match="SNR"):
            build_config(_document(tmp_path, scenario="snr_sweep", sweep=[0, 1000]))

    def test_rejects_non_mapping(self):
        with pytest.raises(ConfigParseError, match="mapping"):
            build_config([1, 2, 3])

    def test_emit_round_trip(self, tmp_path):
        config = build_config(_document(tmp_path, init="uniform", eig_low=0.5, power_mw=50.118723362727231))
        assert build_config(emit_config(config)) == config

    def test_file_round_trip(self, tmp_path):
        config = build_config(_document(tmp_path, scenario="convergence", sweep=[30]))
        path = write_config(config, tmp_path / "experiment.yaml")
        assert parse_config(path) == config

    def test_malformed_yaml(self, tmp_path):
        path = tmp_path / "broken.yaml"
        path.write_text("scenario: [unclosed\n", encoding="utf-8")
        with pytest.raises(ConfigParseError, match="YAML"):
            parse_config(path)

    def test_overrides(self, tmp_path):
        config = build_config(_document(tmp_path))
        assert config.with_seed(99).master_seed == 99
        assert config.with_dimensions(64, 32).system.n_tx == 64
        assert config.with_output("elsewhere.csv").output_path == "elsewhere.csv"


# ============================================================================
# CSV EXPORT
# ============================================================================


class TestExport:
    def test_empty_trace_gives_header_only(self, tmp_path):
        path = export_trace(ConvergenceTrace(algorithm="sca"), tmp_path / "trace.csv")
        with open(path, encoding="utf-8") as f:
            assert f.read() == "iteration,objective,step_size,descent_gap\n"
        assert len(read_trace(path)) == 0

    def test_trace_round_trip(self, tmp_path):
        trace = ConvergenceTrace(algorithm="sgp")
        trace.append(1, 3.141592653589793, 0.9090909090909091, 1e-7)
        trace.append(2, 2.718281828459045, 0.8333333333333334, 0.0)
        loaded = read_trace(export_trace(trace, tmp_path / "nested" / "trace.csv"), algorithm="sgp")
        assert loaded.records == trace.records

    def test_results_and_timing_sidecar(self, tmp_path):
        rows = [
            ResultRow(8.0, "lmmse", 1.5, 0.0, 1.5, 0.0, wall_clock=0.25),
            ResultRow(8.0, "water_filling", 1.75, 0.01, 1.5, 0.25, wall_clock=1.5),
        ]
        path = write_results(rows, tmp_path / "results.csv")
        frame = read_results(path)
        assert list(frame.columns) == RESULT_COLUMNS
        assert frame["metric_mean"].tolist() == [1.5, 1.75]
        timing = read_results(tmp_path / "results.timing.csv")
        assert list(timing.columns) == TIMING_COLUMNS
        assert timing["wall_clock"].tolist() == [0.25, 1.5]


# ============================================================================
# PIPELINE
# ============================================================================


class TestPipeline:
    def test_det_vs_random_orthogonal_batch_meets_bound(self, tmp_path):
        config = build_config(_document(
            tmp_path,
            scenario="det_vs_random",
            sweep=[0, 10],
            signal_kind="deterministic_orthogonal",
            batch_count=3,
        ))
        rows = run_experiment(config)
        assert [row.scheme for row in rows] == ["water_filling", "deterministic"] * 2
        for row in rows:
            assert abs(row.gap) < 1e-9
        assert read_results(config.output_path)["scheme"].tolist() == [row.scheme for row in rows]

    def test_asymptotic_gap_shrinks(self, tmp_path):
        config = build_config(_document(tmp_path, sweep=[4, 64], batch_count=200))
        rows = run_experiment(config)
        assert [row.scheme for row in rows] == ["lmmse", "water_filling"] * 2
        assert rows[0].gap == 0.0
        assert rows[1].gap > rows[3].gap

    def test_output_independent_of_threads(self, tmp_path):
        document = _document(tmp_path, precoders=["water_filling", "sgp", "data_dependent"], batch_count=4)
        serial = build_config(dict(document, output_path=str(tmp_path / "serial.csv")))
        threaded = build_config(dict(document, output_path=str(tmp_path / "threaded.csv")))
        run_experiment(serial, n_jobs=1)
        run_experiment(threaded, n_jobs=2)
        assert (tmp_path / "serial.csv").read_bytes() == (tmp_path / "threaded.csv").read_bytes()

    def test_convergence_writes_traces(self, tmp_path):
        config = build_config(_document(
            tmp_path, scenario="convergence", sweep=[20], precoders=["water_filling", "sgp", "data_dependent"]
        ))
        rows = run_experiment(config)
        assert [row.scheme for row in rows] == ["water_filling", "sgp", "data_dependent"]

        sca = read_trace(tmp_path / "out.sca.0.csv")
        sgp = read_trace(tmp_path / "out.sgp.0.csv")
        assert 1 <= len(sca) <= 3
        assert len(sgp) <= 5
        assert np.all(np.diff(sca.objectives) <= 0)
        assert rows[2].metric_mean == sca.final_objective

    def test_snr_points_set_power(self, tmp_path):
        config = build_config(_document(tmp_path, scenario="snr_sweep", sweep=[0, 20], frame_len=4))
        pipeline = ExperimentPipeline(config)
        assert pipeline.system_at(20.0).power == pytest.approx(100.0 / 4)
        assert pipeline.system_at(0.0).frame_len == 4

    def test_run_trace(self, tmp_path):
        config = build_config(_document(tmp_path, scenario="convergence", sweep=[10]))
        path = tmp_path / "sca.csv"
        trace = run_trace(config, "sca", str(path))
        assert read_trace(path).records == trace.records
        with pytest.raises(ValueError):
            ExperimentPipeline(config).trace("gradient_descent")

    def test_seed_changes_results(self, tmp_path):
        config = build_config(_document(tmp_path, sweep=[8]))
        first = run_experiment(config)
        second = run_experiment(config.with_seed(12).with_output(str(tmp_path / "other.csv")))
        assert first[1].metric_mean != second[1].metric_mean

    @pytest.mark.slow
    def test_snr_sweep_precoder_ordering(self, tmp_path):
        """Data-dependent <= SGP <= water-filling at every SNR point."""
        with open(CONFIG_DIR / "snr_sweep.yaml", "r", encoding="utf-8") as f:
            document = yaml.safe_load(f)
        document.update(sweep=[10, 20, 30], eval_count=500, output_path=str(tmp_path / "snr.csv"))
        config = build_config(document)
        assert (config.system.n_tx, config.system.n_rx, config.system.frame_len) == (8, 4, 8)

        rows = run_experiment(config)
        by_point = {}
        for row in rows:
            by_point.setdefault(row.sweep_point, {})[row.scheme] = row
        assert sorted(by_point) == [10.0, 20.0, 30.0]

        def slack(a, b):
            return 3 * np.hypot(a.metric_stderr, b.metric_stderr)

        for schemes in by_point.values():
            wf, sgp, dd = schemes["water_filling"], schemes["sgp"], schemes["data_dependent"]
            assert sgp.metric_mean <= wf.metric_mean + slack(sgp, wf)
            assert dd.metric_mean <= sgp.metric_mean + slack(dd, sgp)


class TestShippedConfigs:
    @pytest.mark.parametrize("path", sorted(CONFIG_DIR.glob("*.yaml")), ids=lambda p: p.stem)
    def test_parses(self, path):
        config = parse_config(path)
        assert config.output_path == f"output/{path.stem}.csv"

    @pytest.mark.parametrize("scenario", ["snr_sweep", "det_vs_random"])
    def test_frame_length_families(self, scenario):
        frame_lens = {
            parse_config(path).system.frame_len
            for path in CONFIG_DIR.glob(f"{scenario}*.yaml")
        }
        assert frame_lens == {8, 32, 64}
