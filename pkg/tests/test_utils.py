"""Tests for configuration, logging and shared helpers."""

import json
import logging

import numpy as np
import pytest

from randsense.config import Config, get_config, reset_config, set_config
from randsense.errors import NumericalFailureError
from randsense.utils.file_utils import ensure_parent_directory, sibling_path
from randsense.utils.linalg import (
    cholesky,
    crandn,
    hermitian_solve,
    hermitize,
    inner,
    relative_frobenius,
    trace_inverse,
)
from randsense.utils.logger import StructuredFormatter, log_error_with_context, setup_logger
from randsense.utils.parallel import parallel_map
from randsense.utils.validators import (
    validate_hermitian,
    validate_log_level,
    validate_output_path,
    validate_positive_integer,
    validate_positive_real,
    validate_shape,
)


def _record(**extra) -> logging.LogRecord:
    record = logging.LogRecord("randsense.test", logging.INFO, __file__, 1, "sweep point done", (), None)
    for key, value in extra.items():
        setattr(record, key, value)
    return record


# ============================================================================
# CONFIG
# ============================================================================


class TestConfig:
    def test_from_env(self, monkeypatch):
        monkeypatch.setenv("RANDSENSE_LOG_LEVEL", "debug")
        monkeypatch.setenv("RANDSENSE_LOG_FILE", "none")
        monkeypatch.setenv("RANDSENSE_JSON_LOGS", "yes")
        monkeypatch.setenv("RANDSENSE_THREADS", "-1")
        monkeypatch.setenv("RANDSENSE_OUTPUT_DIR", "/tmp/results")
        config = Config.from_env()
        assert config.log_level == "DEBUG"
        assert config.log_file is None
        assert config.json_logs is True
        assert config.threads == -1
        assert config.to_dict()["output_dir"] == "/tmp/results"
        assert config.validate() == (True, None)

    @pytest.mark.parametrize("kwargs", [{"log_level": "LOUD"}, {"threads": 0}, {"threads": -2}, {"full_scale_n_tx": 0}])
    def test_validate_rejects(self, kwargs):
        is_valid, error = Config(**kwargs).validate()
        assert not is_valid
        assert error

    def test_resolve_output(self):
        config = Config(output_dir="runs")
        assert config.resolve_output("asymptotic.csv") == "runs/asymptotic.csv"
        assert config.resolve_output("out/asymptotic.csv") == "out/asymptotic.csv"
        assert config.resolve_output("/abs/asymptotic.csv") == "/abs/asymptotic.csv"

    def test_global_config(self):
        custom = Config(threads=4)
        set_config(custom)
        assert get_config() is custom
        reset_config()
        assert get_config() is not custom
        reset_config()


# ============================================================================
# LOGGING
# ============================================================================


class TestLogging:
    def test_text_format_appends_context(self):
        line = StructuredFormatter().format(_record(n_tx=4, seed=7))
        assert "randsense.test - INFO - sweep point done" in line
        assert line.endswith("| n_tx=4 | seed=7")

    def test_json_format(self):
        payload = json.loads(StructuredFormatter(json_lines=True).format(_record(gap=0.5)))
        assert payload["message"] == "sweep point done"
        assert payload["context"] == {"gap": 0.5}

    def test_file_logging_with_error_context(self, tmp_path):
        path = tmp_path / "run.log"
        logger = setup_logger(name="randsense.test_file", log_level="DEBUG", log_file=str(path))
        try:
            raise NumericalFailureError("solve failed", residual=1e-3)
        except NumericalFailureError as e:
            log_error_with_context(logger, "Numerical failure", e, {"residual": e.residual})
        for handler in logger.handlers:
            handler.flush()
        content = path.read_text(encoding="utf-8")
        assert "error_type=NumericalFailureError" in content
        assert "residual=0.001" in content


# ============================================================================
# VALIDATORS AND FILES
# ============================================================================


class TestValidators:
    def test_log_level(self):
        assert validate_log_level("warning") == (True, None)
        assert not validate_log_level("")[0]
        assert not validate_log_level("TRACE")[0]

    def test_positive_integer(self):
        assert validate_positive_integer(3, "n_tx") == (True, None)
        assert validate_positive_integer(np.int64(3), "n_tx") == (True, None)
        assert "integer" in validate_positive_integer(True, "n_tx")[1]
        assert "integer" in validate_positive_integer(2.0, "n_tx")[1]
        assert ">= 1" in validate_positive_integer(0, "n_tx")[1]

    def test_positive_real(self):
        assert validate_positive_real(0.5) == (True, None)
        assert validate_positive_real(0.0, allow_zero=True) == (True, None)
        assert not validate_positive_real(0.0)[0]
        assert "finite" in validate_positive_real(float("inf"), "power")[1]
        assert not validate_positive_real("abc")[0]

    def test_shape_and_hermitian(self):
        assert validate_shape(np.zeros((2, 3)), (2, 3)) == (True, None)
        assert not validate_shape(np.zeros((2, 3)), (3, 2))[0]
        assert validate_hermitian(np.array([[2.0, 1j], [-1j, 2.0]])) == (True, None)
        assert not validate_hermitian(np.array([[2.0, 1.0], [0.0, 2.0]]))[0]
        assert not validate_hermitian(np.zeros((2, 3)))[0]

    def test_output_path(self, tmp_path):
        assert validate_output_path(str(tmp_path / "new" / "deep" / "out.csv")) == (True, None)
        assert not validate_output_path(str(tmp_path))[0]
        assert not validate_output_path("")[0]

    def test_sibling_path(self):
        assert sibling_path("out/snr_sweep.csv", "timing") == "out/snr_sweep.timing.csv"
        assert sibling_path("out/snr_sweep", "sca.0") == "out/snr_sweep.sca.0.csv"

    def test_ensure_parent_directory(self, tmp_path):
        path = str(tmp_path / "a" / "b" / "c.csv")
        assert ensure_parent_directory(path) == path
        assert (tmp_path / "a" / "b").is_dir()


# ============================================================================
# LINEAR ALGEBRA AND PARALLELISM
# ============================================================================


class TestLinalg:
    def _spd(self, rng, n):
        a = crandn(rng, (n, n))
        return a @ a.conj().T + n * np.eye(n)

    def test_hermitian_solve(self, rng):
        m = self._spd(rng, 5)
        b = crandn(rng, (5, 3))
        x = hermitian_solve(m, b)
        assert relative_frobenius(m @ x, b) < 1e-12

    def test_cholesky_rejects_indefinite(self):
        with pytest.raises(NumericalFailureError, match="not positive definite"):
            cholesky(np.diag([1.0, -1.0]), "test matrix")

    def test_trace_inverse(self, rng):
        m = self._spd(rng, 6)
        assert trace_inverse(m) == pytest.approx(np.real(np.trace(np.linalg.inv(m))), rel=1e-12)

    def test_helpers(self, rng):
        a = crandn(rng, (3, 3))
        np.testing.assert_allclose(hermitize(a), hermitize(a).conj().T)
        assert inner(a, a) == pytest.approx(np.linalg.norm(a) ** 2)
        assert relative_frobenius(np.ones(2), np.zeros(2)) == pytest.approx(np.sqrt(2.0))
        samples = crandn(rng, (100000,))
        assert np.mean(np.abs(samples) ** 2) == pytest.approx(1.0, abs=0.02)


@pytest.mark.parametrize("n_jobs", [1, 3, -1])
def test_parallel_map_preserves_order(n_jobs):
    assert parallel_map(lambda x: x * x, range(20), n_jobs=n_jobs) == [x * x for x in range(20)]
