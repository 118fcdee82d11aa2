"""Experiment harness: configuration documents, scenario pipeline and CSV export."""

from .export import (
    RESULT_COLUMNS,
    TIMING_COLUMNS,
    TRACE_COLUMNS,
    ResultRow,
    export_trace,
    read_results,
    read_trace,
    write_results,
)
from .pipeline import TRACE_SCHEMES, ExperimentPipeline, PointResult, run_experiment, run_trace
from .schema import (
    ExperimentConfig,
    ExperimentDocument,
    Scenario,
    build_config,
    emit_config,
    parse_config,
    write_config,
)

__all__ = [
    "RESULT_COLUMNS",
    "TIMING_COLUMNS",
    "TRACE_COLUMNS",
    "ResultRow",
    "export_trace",
    "read_results",
    "read_trace",
    "write_results",
    "TRACE_SCHEMES",
    "ExperimentPipeline",
    "PointResult",
    "run_experiment",
    "run_trace",
    "ExperimentConfig",
    "ExperimentDocument",
    "Scenario",
    "build_config",
    "emit_config",
    "parse_config",
    "write_config",
]
