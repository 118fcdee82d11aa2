#!/usr/bin/env python3
"""Command-line entry point for RandSense experiments."""

import argparse
import sys
from typing import List, Optional

from randsense.config import Config, set_config
from randsense.errors import ConfigParseError, InvalidParameterError, NumericalFailureError
from randsense.experiments.pipeline import TRACE_SCHEMES, run_experiment, run_trace
from randsense.experiments.schema import ExperimentConfig, parse_config
from randsense.utils.file_utils import sibling_path
from randsense.utils.logger import log_error_with_context, setup_logger
from randsense.utils.validators import validate_output_path

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _seed(value: str) -> int:
    seed = int(value)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be in [0, 2**64), got {value}")
    return seed


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse command-line arguments."""
    parser = argparse.ArgumentParser(
        prog="randsense",
        description="RandSense - precoding experiments for sensing with random ISAC signals",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument('-l', '--log-level', type=str, choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
                        default=None, help='Logging level (default: RANDSENSE_LOG_LEVEL or INFO)')
    parser.add_argument('--log-file', type=str, default=None, help='Also log to this file')
    parser.add_argument('--json-logs', action='store_true', help='Emit one JSON object per log line')

    subparsers = parser.add_subparsers(dest='command', required=True)

    run = subparsers.add_parser('run', help='Run an experiment and write its result CSV')
    run.add_argument('config', type=str, help='Experiment document (YAML)')
    run.add_argument('--seed', type=_seed, default=None, help='Override the master seed')
    run.add_argument('--threads', type=int, default=None, help='Worker threads (-1 for all cores)')
    run.add_argument('--full-scale', action='store_true',
                     help='Use the full antenna counts (64 x 32); expect hours instead of minutes')
    run.add_argument('--out', type=str, default=None, help='Override the output CSV path')

    trace = subparsers.add_parser('trace', help='Export a convergence trace at the first sweep point')
    trace.add_argument('config', type=str, help='Experiment document (YAML)')
    trace.add_argument('--scheme', choices=TRACE_SCHEMES, required=True, help='Algorithm to trace')
    trace.add_argument('--seed', type=_seed, default=None, help='Override the master seed')
    trace.add_argument('--full-scale', action='store_true', help='Use the full antenna counts (64 x 32)')
    trace.add_argument('--out', type=str, default=None, help='Trace CSV path')

    return parser.parse_args(argv)


def build_runtime_config(args: argparse.Namespace) -> Config:
    """Environment settings with command-line overrides applied."""
    config = Config.from_env()
    if args.log_level:
        config.log_level = args.log_level
    if args.log_file:
        config.log_file = args.log_file
    if args.json_logs:
        config.json_logs = True
    if getattr(args, 'threads', None) is not None:
        config.threads = args.threads
    return config


def prepare_experiment(args: argparse.Namespace, runtime: Config) -> ExperimentConfig:
    """Parse the experiment document and apply command-line overrides."""
    experiment = parse_config(args.config)
    if args.seed is not None:
        experiment = experiment.with_seed(args.seed)
    if args.full_scale:
        experiment = experiment.with_dimensions(runtime.full_scale_n_tx, runtime.full_scale_n_rx)
    return experiment


def main(argv: Optional[List[str]] = None) -> int:
    """Main workflow execution."""
    args = parse_arguments(argv)
    runtime = build_runtime_config(args)

    is_valid, error = runtime.validate()
    if not is_valid:
        setup_logger(name="randsense", log_level="INFO").error(f"Configuration failed: {error}")
        return EXIT_CONFIG

    set_config(runtime)
    logger = setup_logger(
        name="randsense",
        log_level=runtime.log_level,
        log_file=runtime.log_file,
        json_lines=runtime.json_logs,
    )

    logger.info("=" * 80)
    logger.info("RandSense - Sensing with Random ISAC Signals")
    logger.info("=" * 80)

    try:
        experiment = prepare_experiment(args, runtime)
        if args.command == 'run':
            output = runtime.resolve_output(args.out or experiment.output_path)
        else:
            output = args.out or sibling_path(runtime.resolve_output(experiment.output_path), args.scheme)
        experiment = experiment.with_output(output)
        logger.info(f"Experiment: {experiment.scenario.value} from {args.config}",
                    extra={"seed": experiment.master_seed, "n_tx": experiment.system.n_tx})
    except (ConfigParseError, InvalidParameterError) as e:
        logger.error(f"✗ Configuration failed: {e}")
        return EXIT_CONFIG
    except OSError as e:
        logger.error(f"✗ Cannot read {args.config}: {e}")
        return EXIT_FAILURE

    is_valid, error = validate_output_path(output)
    if not is_valid:
        logger.error(f"✗ Output not writable: {error}")
        return EXIT_FAILURE

    try:
        if args.command == 'run':
            rows = run_experiment(experiment, n_jobs=runtime.threads)
            logger.info(f"✓ Results: {output} ({len(rows)} rows)")
        else:
            trace = run_trace(experiment, args.scheme, output)
            logger.info(f"✓ Trace: {output} ({len(trace)} iterations, final {trace.final_objective:.6g})")
    except NumericalFailureError as e:
        log_error_with_context(logger, "✗ Numerical failure", e, {"residual": e.residual})
        return EXIT_NUMERICAL
    except InvalidParameterError as e:
        logger.error(f"✗ Invalid parameter{f' {e.parameter}' if e.parameter else ''}: {e}")
        return EXIT_CONFIG
    except OSError as e:
        log_error_with_context(logger, "✗ I/O failure", e, {"output": output})
        return EXIT_FAILURE
    except Exception as e:
        log_error_with_context(logger, "✗ Experiment failed", e, {"command": args.command})
        return EXIT_FAILURE

    logger.info("=" * 80)
    logger.info("RUN COMPLETE")
    logger.info("=" * 80)
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
