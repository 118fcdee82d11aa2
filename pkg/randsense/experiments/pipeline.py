"""Experiment pipeline: runs a scenario over its sweep and writes the result table."""

import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from randsense.core_model.generators import gen_correlation, sample_signals
from randsense.core_model.seeding import Stream, derive_seed
from randsense.core_model.units import power_for_snr
from randsense.elmmse.metric import jensen_bound, monte_carlo_elmmse
from randsense.experiments.export import ResultRow, export_trace, write_results
from randsense.experiments.schema import ExperimentConfig, Scenario
from randsense.models.precoder import ConvergenceTrace, ElmmseEstimate, Precoder, WaterFillingResult
from randsense.models.system import CorrelationMatrix, SignalBatch, SignalKind, SystemConfig
from randsense.precoding.sca import data_dependent_suite, sca_optimize
from randsense.precoding.sgp import sgp_optimize
from randsense.precoding.water_filling import InitKind, initial_precoder, water_filling
from randsense.utils.file_utils import sibling_path
from randsense.utils.logger import get_logger
from randsense.utils.parallel import parallel_map

logger = get_logger(__name__)

TRACE_SCHEMES = ("sca", "sgp")


@dataclass
class PointResult:
    """Rows and convergence traces produced at one sweep point."""

    rows: List[ResultRow] = field(default_factory=list)
    traces: Dict[str, ConvergenceTrace] = field(default_factory=dict)


class ExperimentPipeline:
    """
    Orchestrates one experiment.

    Every random draw comes from a stream derived from the master seed, the
    stream purpose and the sweep-point index, so the result table depends
    only on the configuration: not on thread count or execution order.
    """

    def __init__(self, config: ExperimentConfig, n_jobs: int = 1):
        """
        Initialize the pipeline.

        Args:
            config: Validated experiment configuration
            n_jobs: Worker threads; sweep points run in parallel
        """
        self.config = config
        self.n_jobs = n_jobs
        self._corr: Optional[CorrelationMatrix] = None

    @property
    def corr(self) -> CorrelationMatrix:
        """Channel correlation shared by every sweep point."""
        if self._corr is None:
            cfg = self.config
            self._corr = gen_correlation(
                cfg.system.n_tx,
                cfg.eig_low,
                cfg.eig_high,
                derive_seed(cfg.master_seed, Stream.CORRELATION),
            )
        return self._corr

    def _seed(self, stream: Stream, index: int) -> int:
        return derive_seed(self.config.master_seed, stream, index)

    def system_at(self, point: float) -> SystemConfig:
        """
        System configuration at a sweep point.

        Frame-length sweeps keep P fixed; SNR sweeps keep L and sigma_s^2 and
        set P = 10^(snr/10) sigma_s^2 / L.
        """
        system = self.config.system
        if self.config.scenario.sweeps_frame_len:
            return system.with_frame_len(int(point))
        return system.with_power(power_for_snr(point, system.noise_var, system.frame_len))

    def _start(self, system: SystemConfig, wf: WaterFillingResult) -> Precoder:
        if self.config.init is InitKind.WATER_FILLING:
            return wf.precoder
        return initial_precoder(system, self.corr, self.config.init)

    def _batch(self, system: SystemConfig, index: int) -> SignalBatch:
        cfg = self.config
        if cfg.scenario is Scenario.SNR_SWEEP:
            kind, count = SignalKind.GAUSSIAN, cfg.eval_count
        else:
            kind, count = cfg.signal_kind, cfg.batch_count
        return sample_signals(system, count, kind, self._seed(Stream.EVALUATION, index))

    def run_sca(self, system: SystemConfig, index: int) -> Tuple[np.ndarray, Precoder, ConvergenceTrace]:
        """SCA on the single trace signal of a sweep point."""
        s = sample_signals(system, 1, SignalKind.GAUSSIAN, self._seed(Stream.TRACE_SIGNAL, index))[0]
        start = self._start(system, water_filling(system, self.corr))
        precoder, trace = sca_optimize(s, start, self.config.sca, system, self.corr)
        return s, precoder, trace

    def run_sgp(self, system: SystemConfig, index: int) -> Tuple[Precoder, ConvergenceTrace]:
        """SGP trained on the stream of a sweep point."""
        start = self._start(system, water_filling(system, self.corr))
        return sgp_optimize(system, self.corr, start, self.config.sgp, self._seed(Stream.SGP_TRAINING, index))

    def _row(self, point: float, scheme: str, estimate: ElmmseEstimate, bound: float, started: float) -> ResultRow:
        return ResultRow(
            sweep_point=point,
            scheme=scheme,
            metric_mean=estimate.mean,
            metric_stderr=estimate.std_error,
            jensen_bound=bound,
            gap=estimate.mean - bound,
            wall_clock=time.perf_counter() - started,
        )

    def _bound_row(self, point: float, scheme: str, bound: float, started: float) -> ResultRow:
        return self._row(point, scheme, ElmmseEstimate(mean=bound, std_error=0.0, count=1), bound, started)

    def _convergence_point(self, index: int, point: float) -> PointResult:
        system = self.system_at(point)
        wf = water_filling(system, self.corr)
        wf_bound = jensen_bound(wf.precoder, system, self.corr)
        result = PointResult()

        for scheme in self.config.precoders:
            started = time.perf_counter()
            if scheme == "water_filling":
                batch = self._batch(system, index)
                estimate = monte_carlo_elmmse(wf.precoder, batch, system, self.corr)
                result.rows.append(self._row(point, scheme, estimate, wf_bound, started))
            elif scheme == "data_dependent":
                _, _, trace = self.run_sca(system, index)
                result.traces["sca"] = trace
                estimate = ElmmseEstimate(mean=trace.final_objective, std_error=0.0, count=1)
                result.rows.append(self._row(point, scheme, estimate, wf_bound, started))
            else:
                precoder, trace = self.run_sgp(system, index)
                result.traces["sgp"] = trace
                estimate = monte_carlo_elmmse(precoder, self._batch(system, index), system, self.corr)
                bound = jensen_bound(precoder, system, self.corr)
                result.rows.append(self._row(point, scheme, estimate, bound, started))

        return result

    def _evaluation_point(self, index: int, point: float) -> PointResult:
        cfg = self.config
        system = self.system_at(point)
        started = time.perf_counter()
        wf = water_filling(system, self.corr)
        wf_bound = jensen_bound(wf.precoder, system, self.corr)
        batch = self._batch(system, index)
        result = PointResult()

        if cfg.scenario is Scenario.ASYMPTOTIC_L:
            result.rows.append(self._bound_row(point, "lmmse", wf_bound, started))

        for scheme in cfg.precoders:
            started = time.perf_counter()
            if scheme == "water_filling":
                estimate = monte_carlo_elmmse(wf.precoder, batch, system, self.corr)
                bound = wf_bound
            elif scheme == "sgp":
                precoder, _ = self.run_sgp(system, index)
                estimate = monte_carlo_elmmse(precoder, batch, system, self.corr)
                bound = jensen_bound(precoder, system, self.corr)
            else:
                suite = data_dependent_suite(batch, self._start(system, wf), cfg.sca, system, self.corr)
                estimate = suite.estimate
                bound = wf_bound
            result.rows.append(self._row(point, scheme, estimate, bound, started))

        if cfg.scenario is Scenario.DET_VS_RANDOM:
            started = time.perf_counter()
            result.rows.append(self._bound_row(point, "deterministic", wf_bound, started))

        return result

    def run_point(self, index: int, point: float) -> PointResult:
        """Evaluate every requested scheme at one sweep point."""
        logger.info(f"Sweep point {index + 1}/{len(self.config.sweep)}: {point:g}")
        if self.config.scenario is Scenario.CONVERGENCE:
            result = self._convergence_point(index, point)
        else:
            result = self._evaluation_point(index, point)
        for row in result.rows:
            logger.info(
                f"  ✓ {row.scheme}: {row.metric_mean:.6g} ± {row.metric_stderr:.2g}",
                extra={"sweep_point": point, "gap": row.gap},
            )
        return result

    def execute(self) -> List[ResultRow]:
        """
        Run the whole sweep and write the result table.

        Stages:
        1. Generate the channel correlation
        2. Evaluate every sweep point (in parallel)
        3. Write the result CSV, timing sidecar and any convergence traces

        Returns:
            Result rows in sweep order

        Raises:
            InvalidParameterError: If a derived configuration is invalid
            NumericalFailureError: If a Hermitian solve fails
            OSError: If an output cannot be written
        """
        cfg = self.config
        logger.info("=" * 80)
        logger.info(f"Starting experiment: {cfg.scenario.value}")
        logger.info("=" * 80)

        logger.info("Stage 1: Generating channel correlation")
        logger.info(
            f"✓ Correlation ready (trace {self.corr.trace:.4f})",
            extra={"n_tx": cfg.system.n_tx, "n_rx": cfg.system.n_rx, "seed": cfg.master_seed},
        )

        logger.info(f"Stage 2: Evaluating {len(cfg.sweep)} sweep points")
        points = list(enumerate(cfg.sweep))
        results = parallel_map(lambda item: self.run_point(*item), points, n_jobs=self.n_jobs)

        logger.info("Stage 3: Writing outputs")
        rows = [row for result in results for row in result.rows]
        write_results(rows, cfg.output_path)
        for index, result in enumerate(results):
            for scheme, trace in result.traces.items():
                export_trace(trace, sibling_path(cfg.output_path, f"{scheme}.{index}"))

        logger.info("=" * 80)
        logger.info(f"Experiment complete: {len(rows)} rows")
        logger.info("=" * 80)
        return rows

    def trace(self, scheme: str) -> ConvergenceTrace:
        """
        Convergence trace of one algorithm at the first sweep point.

        Args:
            scheme: "sca" or "sgp"

        Returns:
            ConvergenceTrace
        """
        if scheme not in TRACE_SCHEMES:
            raise ValueError(f"scheme must be one of {TRACE_SCHEMES}, got {scheme!r}")
        system = self.system_at(self.config.sweep[0])
        if scheme == "sca":
            return self.run_sca(system, 0)[2]
        return self.run_sgp(system, 0)[1]


def run_experiment(config: ExperimentConfig, n_jobs: int = 1) -> List[ResultRow]:
    """
    Execute an experiment and write its CSV outputs.

    Args:
        config: Validated experiment configuration
        n_jobs: Worker threads

    Returns:
        Result rows in sweep order
    """
    return ExperimentPipeline(config, n_jobs=n_jobs).execute()


def run_trace(config: ExperimentConfig, scheme: str, path: str) -> ConvergenceTrace:
    """Run one algorithm at the first sweep point and export its trace to ``path``."""
    trace = ExperimentPipeline(config).trace(scheme)
    export_trace(trace, path)
    return trace
