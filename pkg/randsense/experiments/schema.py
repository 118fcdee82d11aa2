"""
Experiment documents: parsing, validation and canonical emission.

An experiment document is a flat YAML mapping. Power and noise may be given
in dBm (``power_dbm``, ``noise_dbm``) or linear mW (``power_mw``,
``noise_var_mw``); the canonical form emitted by ``emit_config`` uses the
linear keys so that a re-parse reproduces the configuration exactly.
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from randsense.core_model.units import dbm_to_mw
from randsense.errors import ConfigParseError, InvalidParameterError
from randsense.models.precoder import LineSearchConfig, ScaConfig, SgpConfig
from randsense.models.system import SignalKind, SystemConfig
from randsense.precoding.water_filling import InitKind
from randsense.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_POWER_DBM = 30.0
DEFAULT_NOISE_DBM = 0.0
# Keeps 10^(x/10) inside the double range
MAX_DB = 300.0

PrecoderName = Literal["water_filling", "sgp", "data_dependent"]


class Scenario(str, Enum):
    """The four experiments."""

    ASYMPTOTIC_L = "asymptotic_L"
    CONVERGENCE = "convergence"
    SNR_SWEEP = "snr_sweep"
    DET_VS_RANDOM = "det_vs_random"

    @property
    def sweeps_frame_len(self) -> bool:
        return self is Scenario.ASYMPTOTIC_L


class ExperimentDocument(BaseModel):
    """Schema of the flat experiment document. Unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid", strict=True)

    scenario: Scenario
    sweep: List[float] = Field(..., min_length=1)
    output_path: str = Field(..., min_length=1)

    n_tx: int = Field(default=8, ge=1)
    n_rx: int = Field(default=4, ge=1)
    frame_len: int = Field(default=32, ge=1)
    power_dbm: Optional[float] = None
    power_mw: Optional[float] = Field(default=None, gt=0)
    noise_dbm: Optional[float] = None
    noise_var_mw: Optional[float] = Field(default=None, gt=0)

    precoders: List[PrecoderName] = Field(
        default_factory=lambda: ["water_filling", "sgp", "data_dependent"], min_length=1
    )
    batch_count: int = Field(default=100, ge=1)
    eval_count: int = Field(default=500, ge=1)
    master_seed: int = Field(default=0, ge=0, lt=2**64)
    eig_low: float = Field(default=1.0, gt=0)
    eig_high: float = Field(default=10.0, gt=0)
    signal_kind: SignalKind = SignalKind.GAUSSIAN
    init: InitKind = InitKind.WATER_FILLING

    sca_max_iters: int = Field(default=30, ge=1)
    sca_stop_gap: float = Field(default=-0.1, lt=0)
    line_search_grid: int = Field(default=33, ge=2)
    line_search_refine: int = Field(default=40, ge=0)

    sgp_batch_size: int = Field(default=10, ge=1)
    sgp_max_iters: int = Field(default=2000, ge=1)
    sgp_tol: float = Field(default=1e-5, gt=0)
    sgp_step_a: float = Field(default=10.0, gt=0)
    sgp_window: int = Field(default=20, ge=1)

    @model_validator(mode="before")
    @classmethod
    def coerce_enums(cls, data: Any) -> Any:
        # Strict mode only accepts enum members; YAML gives strings
        if isinstance(data, dict):
            data = dict(data)
            for key, enum in (("scenario", Scenario), ("signal_kind", SignalKind), ("init", InitKind)):
                value = data.get(key)
                if isinstance(value, str):
                    try:
                        data[key] = enum(value)
                    except ValueError:
                        allowed = ", ".join(member.value for member in enum)
                        raise ValueError(f"{key}: '{value}' is not one of {allowed}")
        return data

    @model_validator(mode="after")
    def check_consistency(self) -> "ExperimentDocument":
        if self.power_dbm is not None and self.power_mw is not None:
            raise ValueError("give at most one of power_dbm and power_mw")
        if self.noise_dbm is not None and self.noise_var_mw is not None:
            raise ValueError("give at most one of noise_dbm and noise_var_mw")
        if self.eig_high < self.eig_low:
            raise ValueError(f"eig_high ({self.eig_high}) must be >= eig_low ({self.eig_low})")
        if len(set(self.precoders)) != len(self.precoders):
            raise ValueError("precoders must not repeat")
        if not all(math.isfinite(value) for value in self.sweep):
            raise ValueError("sweep points must be finite")
        if len(set(self.sweep)) != len(self.sweep):
            raise ValueError("sweep points must not repeat")
        for key in ("power_dbm", "noise_dbm"):
            value = getattr(self, key)
            if value is not None and not abs(value) <= MAX_DB:
                raise ValueError(f"{key} must lie in [-{MAX_DB:g}, {MAX_DB:g}], got {value}")
        if not self.scenario.sweeps_frame_len and max(abs(value) for value in self.sweep) > MAX_DB:
            raise ValueError(f"SNR sweep points must lie in [-{MAX_DB:g}, {MAX_DB:g}] dB")

        frame_lens = [self.frame_len]
        if self.scenario.sweeps_frame_len:
            for value in self.sweep:
                if value != int(value) or value < 1:
                    raise ValueError(f"frame-length sweep points must be positive integers, got {value}")
            frame_lens = [int(value) for value in self.sweep]
        if self.signal_kind is SignalKind.DETERMINISTIC_ORTHOGONAL and min(frame_lens) < self.n_tx:
            raise ValueError(
                f"orthogonal training needs frame_len >= n_tx, got L={min(frame_lens)} < Nt={self.n_tx}"
            )
        return self

    @property
    def power(self) -> float:
        if self.power_mw is not None:
            return self.power_mw
        return dbm_to_mw(DEFAULT_POWER_DBM if self.power_dbm is None else self.power_dbm)

    @property
    def noise_var(self) -> float:
        if self.noise_var_mw is not None:
            return self.noise_var_mw
        return dbm_to_mw(DEFAULT_NOISE_DBM if self.noise_dbm is None else self.noise_dbm)


@dataclass(frozen=True)
class ExperimentConfig:
    """A validated experiment, ready to run."""

    scenario: Scenario
    system: SystemConfig
    sweep: Tuple[float, ...]
    output_path: str
    precoders: Tuple[str, ...] = ("water_filling", "sgp", "data_dependent")
    batch_count: int = 100
    eval_count: int = 500
    eig_low: float = 1.0
    eig_high: float = 10.0
    signal_kind: SignalKind = SignalKind.GAUSSIAN
    init: InitKind = InitKind.WATER_FILLING
    sca: ScaConfig = field(default_factory=ScaConfig)
    sgp: SgpConfig = field(default_factory=SgpConfig)

    @property
    def master_seed(self) -> int:
        return self.system.master_seed

    def with_seed(self, seed: int) -> "ExperimentConfig":
        return replace(self, system=replace(self.system, master_seed=seed))

    def with_dimensions(self, n_tx: int, n_rx: int) -> "ExperimentConfig":
        """Same experiment at other antenna counts (used by --full-scale)."""
        return replace(self, system=replace(self.system, n_tx=n_tx, n_rx=n_rx))

    def with_output(self, output_path: str) -> "ExperimentConfig":
        return replace(self, output_path=output_path)


def _field_path(error: Dict[str, Any]) -> Optional[str]:
    location = [str(part) for part in error.get("loc", ())]
    return ".".join(location) or None


def build_config(data: Any) -> ExperimentConfig:
    """
    Validate a parsed document and convert it to an ExperimentConfig.

    Args:
        data: Mapping as produced by ``yaml.safe_load``

    Returns:
        ExperimentConfig

    Raises:
        ConfigParseError: With the offending field path on any violation
    """
    if not isinstance(data, dict):
        raise ConfigParseError(f"experiment document must be a mapping, got {type(data).__name__}")

    try:
        document = ExperimentDocument.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise ConfigParseError(first["msg"], field_path=_field_path(first)) from e

    try:
        system = SystemConfig(
            n_tx=document.n_tx,
            n_rx=document.n_rx,
            frame_len=document.frame_len,
            power=document.power,
            noise_var=document.noise_var,
            master_seed=document.master_seed,
        )
        config = ExperimentConfig(
            scenario=document.scenario,
            system=system,
            sweep=tuple(float(value) for value in document.sweep),
            output_path=document.output_path,
            precoders=tuple(document.precoders),
            batch_count=document.batch_count,
            eval_count=document.eval_count,
            eig_low=document.eig_low,
            eig_high=document.eig_high,
            signal_kind=document.signal_kind,
            init=document.init,
            sca=ScaConfig(
                max_iters=document.sca_max_iters,
                stop_gap=document.sca_stop_gap,
                line_search=LineSearchConfig(
                    grid_points=document.line_search_grid,
                    refine_iters=document.line_search_refine,
                ),
            ),
            sgp=SgpConfig(
                batch_size=document.sgp_batch_size,
                max_iters=document.sgp_max_iters,
                tol=document.sgp_tol,
                step_a=document.sgp_step_a,
                window=document.sgp_window,
            ),
        )
    except InvalidParameterError as e:
        raise ConfigParseError(str(e), field_path=e.parameter) from e

    return config


def parse_config(path: Union[str, Path]) -> ExperimentConfig:
    """
    Read and validate an experiment document.

    Omitted optional fields take the defaults of the reference setup
    (N = 100, xi = -0.1, t_max = 30, r_max = 2000, epsilon = 1e-5,
    P = 30 dBm, sigma_s^2 = 0 dBm).

    Args:
        path: YAML file path

    Returns:
        ExperimentConfig

    Raises:
        ConfigParseError: If the document is malformed or invalid
        OSError: If the file cannot be read
    """
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise ConfigParseError(f"malformed YAML: {e}") from e

    config = build_config(data)
    logger.debug(f"Parsed experiment document {path}", extra={"scenario": config.scenario.value})
    return config


def emit_config(config: ExperimentConfig) -> Dict[str, Any]:
    """
    Canonical flat mapping of a configuration.

    ``build_config(emit_config(c)) == c`` for every valid ``c``.
    """
    system = config.system
    return {
        "scenario": config.scenario.value,
        "sweep": list(config.sweep),
        "output_path": config.output_path,
        "n_tx": system.n_tx,
        "n_rx": system.n_rx,
        "frame_len": system.frame_len,
        "power_mw": system.power,
        "noise_var_mw": system.noise_var,
        "precoders": list(config.precoders),
        "batch_count": config.batch_count,
        "eval_count": config.eval_count,
        "master_seed": system.master_seed,
        "eig_low": config.eig_low,
        "eig_high": config.eig_high,
        "signal_kind": config.signal_kind.value,
        "init": config.init.value,
        "sca_max_iters": config.sca.max_iters,
        "sca_stop_gap": config.sca.stop_gap,
        "line_search_grid": config.sca.line_search.grid_points,
        "line_search_refine": config.sca.line_search.refine_iters,
        "sgp_batch_size": config.sgp.batch_size,
        "sgp_max_iters": config.sgp.max_iters,
        "sgp_tol": config.sgp.tol,
        "sgp_step_a": config.sgp.step_a,
        "sgp_window": config.sgp.window,
    }


def write_config(config: ExperimentConfig, path: Union[str, Path]) -> str:
    """Write the canonical document as YAML and return the path."""
    with open(path, "w", encoding="utf-8") as f:
        yaml.safe_dump(emit_config(config), f, default_flow_style=False, sort_keys=False)
    return str(path)
