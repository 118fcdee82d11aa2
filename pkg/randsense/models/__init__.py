"""Data models for RandSense."""

from .system import (
    CorrelationMatrix,
    SensingScene,
    SignalBatch,
    SignalKind,
    SystemConfig,
    transmit_snr,
)
from .precoder import (
    ConvergenceTrace,
    DataDependentResult,
    ElmmseEstimate,
    EstimateReport,
    IterationRecord,
    LineSearchConfig,
    Precoder,
    PrecoderLike,
    ScaConfig,
    SgpConfig,
    WaterFillingResult,
    as_matrix,
)

__all__ = [
    "CorrelationMatrix",
    "SensingScene",
    "SignalBatch",
    "SignalKind",
    "SystemConfig",
    "transmit_snr",
    "ConvergenceTrace",
    "DataDependentResult",
    "ElmmseEstimate",
    "EstimateReport",
    "IterationRecord",
    "LineSearchConfig",
    "Precoder",
    "PrecoderLike",
    "ScaConfig",
    "SgpConfig",
    "WaterFillingResult",
    "as_matrix",
]
