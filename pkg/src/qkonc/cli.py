"""
Command line front end.

Subcommands:
    concentration   kernel concentration sweep with decay fits
    compare         modeled quantum runtime vs. measured classical simulation time
    shots           shot budget and quantum runtime from a stored fits file
    bench           classical simulation time only

Every failure ends with exit status 1 and a single JSON line `{"error": ..., "message": ...}` on stderr.
"""

# Imports
# ------------------------------------------------------------

import argparse
import json
import logging
import os
import sys
import time
from typing import Any, Dict, List, Optional, Sequence

from qkonc import __version__
from qkonc.benchmark import BenchmarkResult, benchmark_classical, machine_descriptor
from qkonc.config import ExperimentConfig, parse_qubits
from qkonc.errors import ArgumentError, QkoncError
from qkonc.fitting import ExpFit
from qkonc.kernel import concentration_sweep, derive_seed
from qkonc.report import (COMPARISON, CONCENTRATION, INSUFFICIENT_POINTS, ExperimentReport, emit_csv, emit_svg,
                          prepare_output_dir, write_csv, write_json)
from qkonc.runtime import (RuntimeParams, RuntimeScope, circuit_time, fit_concentration, quantum_runtime,
                           runtime_comparison, scheduled_shots)
from qkonc.shots import ShotPlan
from qkonc.simulation.featuremap import kernel_circuit_layer_count

# Module constants
# ------------------------------------------------------------

logger = logging.getLogger(__name__)

LOG_FORMAT: str = "%(asctime)s %(levelname)s %(name)s: %(message)s"

SHOTS_HEADER: List[str] = ["n", "layers", "shots", "t_circ_s", "t_quantum_s", "scope"]
BENCH_HEADER: List[str] = ["n", "m", "median_s", "repetitions", "low_resolution"]

# Classes
# ------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """`ArgumentParser` that raises `ArgumentError` instead of printing usage and exiting."""

    def error(self, message: str) -> None:
        raise ArgumentError(message)


# Experiments
# ------------------------------------------------------------


def run_concentration(config: ExperimentConfig) -> ExperimentReport:
    """
    Runs the kernel concentration sweep and writes `concentration.csv`, `fits.json`,
    `concentration.svg`, `report.json` and `manifest.json` to the output directory.

    Arguments:
        config (ExperimentConfig): The experiment configuration.

    Returns:
        The report of the experiment.
    """
    config.validate()
    prepare_output_dir(config.out)
    start = time.perf_counter()

    report = ExperimentReport(config, machine=machine_descriptor())
    report.points = concentration_sweep(config.qubits, config.m, config.seed, config.reps,
                                        config.low, config.high, config.workers)
    if len(report.points) < 2:
        report.fit_status = INSUFFICIENT_POINTS
        logger.warning("Decay fits skipped: %s.", INSUFFICIENT_POINTS)
    else:
        try:
            report.mu_fit, report.sigma_fit = fit_concentration(report.points)
        except QkoncError as e:
            report.fit_status = "fit failed: {}".format(e)
            logger.warning("Decay fits failed: %s", e)

    report.wall_time_s = time.perf_counter() - start
    emit_csv(report, os.path.join(config.out, "concentration.csv"), CONCENTRATION)
    write_json(os.path.join(config.out, "fits.json"), report.fits_dict())
    emit_svg(report, os.path.join(config.out, "concentration.svg"), CONCENTRATION)
    write_json(os.path.join(config.out, "report.json"), report.to_dict())
    write_json(os.path.join(config.out, "manifest.json"), report.manifest())
    logger.info("Concentration results written to %s", config.out)
    return report


def run_comparison(config: ExperimentConfig) -> ExperimentReport:
    """
    Runs the full runtime comparison and writes `comparison.csv`, `concentration.csv`, `fits.json`,
    `comparison.svg`, `report.json` and `manifest.json` to the output directory.

    If the pipeline fails, the records completed so far are written together with a manifest
    whose status is `failed`, then the error is re-raised.
    """
    config.validate()
    prepare_output_dir(config.out)
    start = time.perf_counter()

    report = ExperimentReport(config, machine=machine_descriptor())
    params = RuntimeParams(config.t_gate, config.t_meas, config.gamma)
    try:
        curve = runtime_comparison(config.qubits, config.m, params, config.feature_map(config.qubits[0]),
                                   config.seed, config.scope, config.bench_repetitions, config.low,
                                   config.high, config.include_dataset_time, config.workers,
                                   config.growth_min_qubits, on_record=report.records.append)
    except Exception as e:
        report.status = "failed"
        report.error = "{}: {}".format(type(e).__name__, e)
        report.wall_time_s = time.perf_counter() - start
        emit_csv(report, os.path.join(config.out, "comparison.csv"), COMPARISON)
        write_json(os.path.join(config.out, "manifest.json"), report.manifest())
        logger.error("Comparison failed after %d records; partial results written to %s",
                     len(report.records), config.out)
        raise

    report.curve = curve
    report.points = curve.points
    report.mu_fit, report.sigma_fit = curve.mu_fit, curve.sigma_fit
    report.wall_time_s = time.perf_counter() - start
    for label, growth in (("quantum", curve.quantum_growth), ("classical", curve.classical_growth)):
        if growth is not None:
            logger.info("%s runtime growth rate %.4g per qubit (r2=%.4f)", label, -growth.alpha, growth.r_squared)

    emit_csv(report, os.path.join(config.out, "comparison.csv"), COMPARISON)
    emit_csv(report, os.path.join(config.out, "concentration.csv"), CONCENTRATION)
    write_json(os.path.join(config.out, "fits.json"), report.fits_dict())
    emit_svg(report, os.path.join(config.out, "comparison.svg"), COMPARISON)
    write_json(os.path.join(config.out, "report.json"), report.to_dict())
    write_json(os.path.join(config.out, "manifest.json"), report.manifest())
    logger.info("Comparison results written to %s", config.out)
    return report


def run_shots(config: ExperimentConfig, fits_path: str) -> List[Dict[str, Any]]:
    """
    Evaluates R(n), t_circ(n) and T_Q(n) for the configured qubit counts from a stored fits file
    and writes them to `shots.csv`.

    Returns:
        One row per qubit count.
    """
    config.validate()
    plan = ShotPlan(config.gamma, *load_fits(fits_path))
    params = RuntimeParams(config.t_gate, config.t_meas, config.gamma)
    prepare_output_dir(config.out)

    rows = []
    for n in config.qubits:
        rows.append({
            "n": n,
            "layers": kernel_circuit_layer_count(n),
            "shots": scheduled_shots(n, plan, config.scope, config.m),
            "t_circ_s": circuit_time(n, params),
            "t_quantum_s": quantum_runtime(n, params, plan, config.scope, config.m),
            "scope": config.scope.value,
        })
    write_csv(os.path.join(config.out, "shots.csv"), SHOTS_HEADER,
              [[row[key] for key in SHOTS_HEADER] for row in rows])
    return rows


def run_bench(config: ExperimentConfig) -> List[BenchmarkResult]:
    """
    Measures the classical Gram simulation time for the configured qubit counts and writes `bench.csv`.
    """
    config.validate()
    prepare_output_dir(config.out)

    results = [benchmark_classical(n, config.m, config.feature_map(n), config.bench_repetitions,
                                   derive_seed(config.seed, n), config.low, config.high,
                                   config.include_dataset_time)
               for n in config.qubits]
    write_csv(os.path.join(config.out, "bench.csv"), BENCH_HEADER,
              [[r.n, r.m, r.median_s, len(r.samples), str(r.low_resolution).lower()] for r in results])
    return results


def load_fits(path: str) -> Sequence[ExpFit]:
    """
    Reads the mean and std decay fits from a `fits.json` file.
    """
    try:
        with open(path, encoding="utf-8") as f:
            data = json.load(f)
    except OSError as e:
        raise ArgumentError("Cannot read fits file {}: {}".format(path, e.strerror)) from e
    except json.JSONDecodeError as e:
        raise ArgumentError("Fits file {} is not valid JSON: {}".format(path, e)) from e
    if not isinstance(data, dict) or data.get("mu") is None or data.get("sigma") is None:
        raise ArgumentError("Fits file {} does not contain both the mu and sigma fits.".format(path))
    return ExpFit.from_dict(data["mu"]), ExpFit.from_dict(data["sigma"])


# Command line
# ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    """
    Creates the argument parser of the `qkonc` command.
    """
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override its values")
    common.add_argument("--qubits", type=parse_qubits, help="qubit counts, e.g. 2,4,6 or 2-12:2")
    common.add_argument("--m", type=int, help="number of data points")
    common.add_argument("--seed", type=int, help="base seed (fallback: $QKONC_SEED)")
    common.add_argument("--reps", type=int, help="feature map repetitions")
    common.add_argument("--low", type=float, help="lower bound of the coordinate interval")
    common.add_argument("--high", type=float, help="upper bound of the coordinate interval")
    common.add_argument("--gamma", type=float, help="precision ratio")
    common.add_argument("--t-gate", dest="t_gate", type=float, help="gate layer time in seconds")
    common.add_argument("--t-meas", dest="t_meas", type=float, help="measurement time in seconds")
    common.add_argument("--scope", choices=[scope.value for scope in RuntimeScope])
    common.add_argument("--out", help="output directory")
    common.add_argument("--bench-repetitions", dest="bench_repetitions", type=int, help="timed benchmark runs")
    common.add_argument("--include-dataset-time", dest="include_dataset_time", action="store_true", default=None,
                        help="time dataset generation together with the Gram computation")
    common.add_argument("--workers", type=int, help="parallel Gram workers for the concentration sweep")
    common.add_argument("--growth-min-qubits", dest="growth_min_qubits", type=int,
                        help="smallest n of the runtime growth fits")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    common.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")

    parser = _Parser(prog="qkonc", description="Kernel concentration and quantum runtime laboratory.")
    parser.add_argument("--version", action="version", version="qkonc {}".format(__version__))
    subparsers = parser.add_subparsers(dest="command", required=True)
    subparsers.add_parser("concentration", parents=[common], help="kernel concentration sweep")
    subparsers.add_parser("compare", parents=[common], help="quantum vs. classical runtime comparison")
    shots = subparsers.add_parser("shots", parents=[common], help="shot budget from stored fits")
    shots.add_argument("--fits", required=True, help="fits.json written by a previous run")
    subparsers.add_parser("bench", parents=[common], help="classical simulation benchmark")
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    """
    Loads the config file of the arguments and applies the flag overrides.
    """
    overrides = {name: getattr(args, name) for name in
                 ("qubits", "m", "seed", "reps", "low", "high", "gamma", "t_gate", "t_meas", "scope", "out",
                  "bench_repetitions", "include_dataset_time", "workers", "growth_min_qubits")}
    return ExperimentConfig.load(args.config).replace(**overrides)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Entry point of the `qkonc` command.

    Returns:
        The exit status.
    """
    try:
        args = build_parser().parse_args(argv)
        level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
        logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)

        config = config_from_args(args).validate()
        if args.command == "concentration":
            run_concentration(config)
        elif args.command == "compare":
            run_comparison(config)
        elif args.command == "shots":
            run_shots(config, args.fits)
        else:
            run_bench(config)
    except (QkoncError, OSError, MemoryError) as e:
        message = str(e).splitlines()[0] if str(e) else type(e).__name__
        sys.stderr.write(json.dumps({"error": type(e).__name__, "message": message}) + "\n")
        return 1
    return 0
