"""
Experiment reports and their persistence as CSV, JSON and SVG files.

CSV files are UTF-8 with LF line endings; floats are written with 17 significant digits so that
reparsing reproduces the in-memory values exactly.
"""

# Imports
# ------------------------------------------------------------

import csv
import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

from qkonc import __version__
from qkonc.config import ExperimentConfig
from qkonc.errors import ArgumentError, OutputError
from qkonc.fitting import ExpFit
from qkonc.kernel import SEED_DERIVATION, ConcentrationPoint
from qkonc.runtime import RuntimeCurve, RuntimeRecord
from qkonc.svg import LogPlot, Series, fitted_points

# Module constants
# ------------------------------------------------------------

logger = logging.getLogger(__name__)

CONCENTRATION: str = "concentration"
COMPARISON: str = "comparison"

CONCENTRATION_HEADER: List[str] = ["n", "m", "seed", "mean_k", "std_k"]
COMPARISON_HEADER: List[str] = ["n", "layers", "shots", "t_circ_s", "t_quantum_s", "t_classical_s", "scope"]

INSUFFICIENT_POINTS: str = "insufficient points"
"""
Fit status written when a sweep has fewer than two points.
"""

# Classes
# ------------------------------------------------------------


@dataclass
class ExperimentReport(object):
    """
    Everything an experiment produced.

    The modeled quantities are fully determined by `config`; `machine`, `wall_time_s` and the
    classical runtimes are the only fields that depend on the run.
    """

    config: ExperimentConfig
    points: List[ConcentrationPoint] = field(default_factory=list)
    mu_fit: Optional[ExpFit] = None
    sigma_fit: Optional[ExpFit] = None

    fit_status: str = "ok"
    """`ok`, `insufficient points` or the reason the decay fit failed."""

    curve: Optional[RuntimeCurve] = None
    records: List[RuntimeRecord] = field(default_factory=list)
    """Completed runtime comparison rows; filled progressively so partial results can be written."""

    version: str = __version__
    machine: Dict[str, str] = field(default_factory=dict)
    wall_time_s: float = 0.0

    status: str = "ok"
    """`ok` or `failed`."""

    error: Optional[str] = None

    def fits_dict(self) -> Dict[str, Any]:
        """
        Returns the fits in the `{"mu": {...}, "sigma": {...}}` layout.
        """
        result: Dict[str, Any] = {
            "mu": self.mu_fit.to_dict() if self.mu_fit is not None else None,
            "sigma": self.sigma_fit.to_dict() if self.sigma_fit is not None else None,
        }
        if self.fit_status != "ok":
            result["status"] = self.fit_status
        return result

    def to_dict(self) -> Dict[str, Any]:
        """
        Returns the deterministic part of the report: config echo, sweep, fits and runtime records.
        """
        result: Dict[str, Any] = {
            "version": self.version,
            "config": self.config.to_dict(),
            "seed_derivation": SEED_DERIVATION,
            "points": [_point_dict(point) for point in self.points],
            "fits": self.fits_dict(),
        }
        if self.curve is not None or self.records:
            result["records"] = [_record_dict(record) for record in self.records]
        if self.curve is not None:
            result["growth"] = {
                "quantum": _growth_dict(self.curve.quantum_growth),
                "classical": _growth_dict(self.curve.classical_growth),
            }
            result["advantage_qubits"] = self.curve.advantage_qubits
            result["warnings"] = list(self.curve.warnings)
        return result

    def manifest(self) -> Dict[str, Any]:
        """
        Returns the run dependent metadata of the report.
        """
        return {
            "version": self.version,
            "status": self.status,
            "error": self.error,
            "wall_time_s": self.wall_time_s,
            "machine": self.machine,
        }


# Functions
# ------------------------------------------------------------


def prepare_output_dir(path: str) -> None:
    """
    Creates the output directory if needed and makes sure it is writable.
    """
    try:
        os.makedirs(path, exist_ok=True)
    except OSError as e:
        raise OutputError(path, e.strerror or str(e)) from e
    if not os.path.isdir(path) or not os.access(path, os.W_OK):
        raise OutputError(path, "output directory is not writable")


def emit_csv(report: ExperimentReport, path: str, kind: str = CONCENTRATION) -> None:
    """
    Writes the concentration points or the runtime records of the report as CSV.

    Arguments:
        report (ExperimentReport): The report to write.
        path (str): The destination file.
        kind (str): `concentration` (header `n,m,seed,mean_k,std_k`) or `comparison`
                    (header `n,layers,shots,t_circ_s,t_quantum_s,t_classical_s,scope`).
    """
    if kind == CONCENTRATION:
        header = CONCENTRATION_HEADER
        rows = [[p.n, p.m, p.seed, p.mean, p.std] for p in report.points]
    elif kind == COMPARISON:
        header = COMPARISON_HEADER
        rows = [[r.n, r.layers, r.shots, r.t_circ, r.t_quantum, r.t_classical, r.scope.value]
                for r in report.records]
    else:
        raise ArgumentError("Unknown CSV kind {!r}.".format(kind))

    write_csv(path, header, rows)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    """
    Writes a CSV file; floats are formatted with 17 significant digits.
    """
    try:
        with open(path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([format_value(value) for value in row])
    except OSError as e:
        raise OutputError(path, e.strerror or str(e)) from e
    logger.debug("Wrote %s", path)


def write_json(path: str, data: Any) -> None:
    """
    Writes `data` as indented JSON with a trailing newline.
    """
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(json.dumps(data, indent=2))
            f.write("\n")
    except OSError as e:
        raise OutputError(path, e.strerror or str(e)) from e
    logger.debug("Wrote %s", path)


def emit_svg(report: ExperimentReport, path: str, kind: str = CONCENTRATION) -> None:
    """
    Writes a log-scale chart of the report: mean and std with their fits for `concentration`,
    quantum and classical runtime for `comparison`.
    """
    if kind == CONCENTRATION:
        plot = LogPlot("Kernel value concentration", "qubits n", "kernel value")
        xs = [point.n for point in report.points]
        plot.add(Series("mean <K>", [(p.n, p.mean) for p in report.points]))
        plot.add(Series("std sigma(K)", [(p.n, p.std) for p in report.points]))
        if report.mu_fit is not None:
            plot.add(Series("mean fit", fitted_points(xs, report.mu_fit.C, report.mu_fit.alpha),
                            markers=False, dashed=True))
        if report.sigma_fit is not None:
            plot.add(Series("std fit", fitted_points(xs, report.sigma_fit.C, report.sigma_fit.alpha),
                            markers=False, dashed=True))
    elif kind == COMPARISON:
        plot = LogPlot("Quantum vs. classical runtime", "qubits n", "runtime [s]")
        plot.add(Series("quantum T_Q", [(r.n, r.t_quantum) for r in report.records]))
        plot.add(Series("classical T_C", [(r.n, r.t_classical) for r in report.records]))
    else:
        raise ArgumentError("Unknown chart kind {!r}.".format(kind))

    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(plot.render())
    except OSError as e:
        raise OutputError(path, e.strerror or str(e)) from e
    logger.debug("Wrote %s", path)


def format_value(value: Any) -> str:
    """
    Formats a CSV cell: floats with 17 significant digits, everything else with `str()`.
    """
    if isinstance(value, float):
        return "{:.17g}".format(value)
    return str(value)


def _point_dict(point: ConcentrationPoint) -> Dict[str, Any]:
    return {"n": point.n, "m": point.m, "seed": point.seed, "mean_k": point.mean, "std_k": point.std}


def _record_dict(record: RuntimeRecord) -> Dict[str, Any]:
    return {
        "n": record.n,
        "layers": record.layers,
        "shots": record.shots,
        "shots_per_entry": record.shots_per_entry,
        "t_circ_s": record.t_circ,
        "t_quantum_s": record.t_quantum,
        "t_classical_s": record.t_classical,
        "scope": record.scope.value,
    }


def _growth_dict(fit: Optional[ExpFit]) -> Optional[Dict[str, float]]:
    if fit is None:
        return None
    return {**fit.to_dict(), "rate": -fit.alpha}
