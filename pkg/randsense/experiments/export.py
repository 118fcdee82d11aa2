"""CSV export of result tables and convergence traces."""

from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Dict, Sequence, Union

import pandas as pd

from randsense.models.precoder import ConvergenceTrace
from randsense.utils.file_utils import ensure_parent_directory, sibling_path
from randsense.utils.logger import get_logger

logger = get_logger(__name__)

FLOAT_FORMAT = "%.17g"
RESULT_COLUMNS = ["sweep_point", "scheme", "metric_mean", "metric_stderr", "jensen_bound", "gap"]
TIMING_COLUMNS = ["sweep_point", "scheme", "wall_clock"]
TRACE_COLUMNS = ["iteration", "objective", "step_size", "descent_gap"]


@dataclass(frozen=True)
class ResultRow:
    """One (sweep point, scheme) line of a result table."""

    sweep_point: float
    scheme: str
    metric_mean: float
    metric_stderr: float
    jensen_bound: float
    gap: float
    wall_clock: float = 0.0

    def to_dict(self) -> Dict[str, object]:
        return asdict(self)


def _write_frame(frame: pd.DataFrame, path: Union[str, Path]) -> str:
    path = ensure_parent_directory(str(path))
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, encoding="utf-8", lineterminator="\n")
    return path


def write_results(rows: Sequence[ResultRow], path: Union[str, Path]) -> str:
    """
    Write a result table and its timing sidecar.

    The result CSV holds only seed-determined values, so repeated runs give
    byte-identical files; wall-clock times go to ``<stem>.timing.csv``.

    Args:
        rows: Result rows in output order
        path: Result CSV path

    Returns:
        The result CSV path

    Raises:
        OSError: If a file cannot be written
    """
    records = [row.to_dict() for row in rows]
    results = pd.DataFrame(records, columns=RESULT_COLUMNS + ["wall_clock"])

    path = _write_frame(results[RESULT_COLUMNS], path)
    timing_path = _write_frame(results[TIMING_COLUMNS], sibling_path(path, "timing"))
    logger.info(f"✓ Wrote {len(rows)} result rows to {path} (timing: {timing_path})")
    return path


def read_results(path: Union[str, Path]) -> pd.DataFrame:
    """Load a result CSV."""
    return pd.read_csv(path, encoding="utf-8", float_precision="round_trip")


def export_trace(trace: ConvergenceTrace, path: Union[str, Path]) -> str:
    """
    Write one row per iteration: iteration, objective, step_size, descent_gap.

    An empty trace gives a header-only file.

    Raises:
        OSError: If the file cannot be written
    """
    frame = pd.DataFrame(
        [(r.index, r.objective, r.step_size, r.descent_gap) for r in trace.records],
        columns=TRACE_COLUMNS,
    )
    path = _write_frame(frame, path)
    logger.info(f"✓ Wrote {trace.algorithm or 'trace'} with {len(trace)} iterations to {path}")
    return path


def read_trace(path: Union[str, Path], algorithm: str = "") -> ConvergenceTrace:
    """Load a trace CSV written by ``export_trace``."""
    frame = pd.read_csv(path, encoding="utf-8", float_precision="round_trip")
    missing = [column for column in TRACE_COLUMNS if column not in frame.columns]
    if missing:
        raise ValueError(f"{path} is missing trace columns {missing}")

    trace = ConvergenceTrace(algorithm=algorithm)
    for row in frame.itertuples(index=False):
        trace.append(row.iteration, row.objective, row.step_size, row.descent_gap)
    return trace
