"""
Quantum runtime model and its comparison with measured classical simulation time.

The quantum time of one kernel entry is the single circuit time multiplied by the number of circuit runs:
T_Q(n) = R(n) t_circ(n) with t_circ(n) = N_l(n) t_g + t_m.
"""

# Imports
# ------------------------------------------------------------

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from qkonc.benchmark import MIN_REPETITIONS, BenchmarkResult, benchmark_classical, machine_descriptor
from qkonc.errors import ArgumentError, QkoncError
from qkonc.fitting import ExpFit, fit_exponential
from qkonc.kernel import (DEFAULT_HIGH, DEFAULT_LOW, ConcentrationPoint, concentration_sweep, derive_seed,
                          validate_qubit_list)
from qkonc.shots import DEFAULT_GAMMA, ShotPlan, required_shots
from qkonc.simulation.featuremap import FeatureMapSpec, kernel_circuit_layer_count

# Module constants
# ------------------------------------------------------------

logger = logging.getLogger(__name__)

DEFAULT_GATE_TIME: float = 1e-8
"""
Default execution time of one gate layer in seconds.
"""

DEFAULT_MEASUREMENT_TIME: float = 1e-7
"""
Default duration of the final measurement in seconds.
"""

MIN_FIT_R_SQUARED: float = 0.5
"""
Decay fits below this coefficient of determination are flagged as untrustworthy.
"""

DEFAULT_GROWTH_MIN_QUBITS: int = 10
"""
The smallest qubit count used by default when fitting runtime growth exponents.
"""

# Classes
# ------------------------------------------------------------


class RuntimeScope(str, Enum):
    """
    What a runtime refers to: a single kernel entry or all independent entries of the Gram matrix.
    """

    PER_ENTRY = "per-entry"
    FULL_GRAM = "full-gram"

    def entry_count(self, m: int) -> int:
        """
        Returns the number of kernel entries a runtime of this scope covers for `m` data points.
        """
        return 1 if self is RuntimeScope.PER_ENTRY else pair_count(m)


@dataclass(frozen=True)
class RuntimeParams(object):
    """
    Hardware and model constants of the quantum runtime estimate.
    """

    t_g: float = DEFAULT_GATE_TIME
    """Execution time of a single gate layer in seconds."""

    t_m: float = DEFAULT_MEASUREMENT_TIME
    """Measurement duration in seconds."""

    gamma: float = DEFAULT_GAMMA
    """The precision ratio."""

    def __post_init__(self) -> None:
        # A zero gate time is accepted: it reduces t_circ to the measurement time.
        if not (math.isfinite(self.t_g) and self.t_g >= 0):
            raise ArgumentError("t_g must be non-negative, got {!r}.".format(self.t_g))
        for name in ("t_m", "gamma"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ArgumentError("{} must be strictly positive, got {!r}.".format(name, value))


@dataclass(frozen=True)
class RuntimeRecord(object):
    """
    One row of the runtime comparison.
    """

    n: int
    layers: int

    shots: float
    """Circuit runs of the whole scope: R(n) for per-entry, R(n) m (m - 1) / 2 for full-gram."""

    shots_per_entry: float
    """R(n), the runs estimating a single kernel entry."""

    t_circ: float
    t_quantum: float
    t_classical: float
    scope: RuntimeScope


@dataclass
class RuntimeCurve(object):
    """
    The runtime comparison over a list of qubit counts together with the fits it was derived from.
    """

    scope: RuntimeScope
    m: int
    mu_fit: ExpFit
    sigma_fit: ExpFit
    records: List[RuntimeRecord] = field(default_factory=list)

    points: List[ConcentrationPoint] = field(default_factory=list)
    """The concentration sweep the fits were computed from."""

    quantum_growth: Optional[ExpFit] = None
    """Exponential fit of T_Q over the growth region; its growth rate is `-alpha`."""

    classical_growth: Optional[ExpFit] = None
    """Exponential fit of T_C over the growth region; its growth rate is `-alpha`."""

    benchmarks: List[BenchmarkResult] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    machine: Dict[str, str] = field(default_factory=dict)

    @property
    def advantage_qubits(self) -> List[int]:
        """
        The qubit counts at which the modeled quantum runtime is below the measured classical time.
        """
        return [record.n for record in self.records if record.t_quantum < record.t_classical]


# Functions
# ------------------------------------------------------------


def pair_count(m: int) -> int:
    """
    Returns the number m (m - 1) / 2 of independent kernel entries of `m` data points.
    """
    return m * (m - 1) // 2


def circuit_time(n: int, params: RuntimeParams) -> float:
    """
    Returns the single circuit runtime t_circ(n) = N_l(n) t_g + t_m in seconds.
    """
    return kernel_circuit_layer_count(n) * params.t_g + params.t_m


def scheduled_shots(n: int, plan: ShotPlan, scope: RuntimeScope = RuntimeScope.PER_ENTRY, m: int = 2) -> float:
    """
    Returns the number of circuit runs for all kernel entries the scope covers, R(n) times
    `scope.entry_count(m)`. T_Q(n) equals this count times t_circ(n) in both scopes.
    """
    scope = RuntimeScope(scope)
    if scope is RuntimeScope.FULL_GRAM and m < 2:
        raise ArgumentError("The full-gram scope needs at least 2 data points, got {}.".format(m))
    return required_shots(n, plan) * scope.entry_count(m)


def quantum_runtime(n: int,
                    params: RuntimeParams,
                    plan: ShotPlan,
                    scope: RuntimeScope = RuntimeScope.PER_ENTRY,
                    m: int = 2) -> float:
    """
    Returns the modeled quantum runtime T_Q(n) = R(n) t_circ(n) in seconds.

    Arguments:
        n (int): The number of qubits.
        params (RuntimeParams): Gate and measurement times.
        plan (ShotPlan): The shot budget model.
        scope (RuntimeScope): Whether the runtime of one entry or of all m (m - 1) / 2 entries is returned.
        m (int): The number of data points, only used with the full-gram scope.
    """
    return scheduled_shots(n, plan, scope, m) * circuit_time(n, params)


def fit_concentration(points: Sequence[ConcentrationPoint]) -> Tuple[ExpFit, ExpFit]:
    """
    Fits the exponential decay of the mean and the standard deviation of a concentration sweep.

    Returns:
        The (mean fit, std fit) pair.
    """
    mu_fit = fit_exponential((point.n, point.mean) for point in points)
    sigma_fit = fit_exponential((point.n, point.std) for point in points)
    return mu_fit, sigma_fit


def fit_growth(records: Sequence[RuntimeRecord],
               value: Callable[[RuntimeRecord], float],
               min_qubits: int) -> Optional[ExpFit]:
    """
    Fits C e^{-alpha n} to a runtime column, using the records with n >= min_qubits if at least two
    exist and all records otherwise. Returns `None` if the fit is not possible.
    """
    region = [record for record in records if record.n >= min_qubits]
    if len(region) < 2:
        region = list(records)
    try:
        return fit_exponential((record.n, value(record)) for record in region)
    except QkoncError as e:
        logger.warning("Runtime growth fit skipped: %s", e)
        return None


def runtime_comparison(qubit_list: Sequence[int],
                       m: int,
                       params: RuntimeParams,
                       spec: FeatureMapSpec,
                       seed: int,
                       scope: RuntimeScope = RuntimeScope.FULL_GRAM,
                       repetitions: int = MIN_REPETITIONS,
                       low: float = DEFAULT_LOW,
                       high: float = DEFAULT_HIGH,
                       include_dataset: bool = False,
                       workers: int = 1,
                       growth_min_qubits: int = DEFAULT_GROWTH_MIN_QUBITS,
                       on_record: Optional[Callable[[RuntimeRecord], None]] = None) -> RuntimeCurve:
    """
    Runs the full comparison: concentration sweep, decay fits, shot budget, modeled quantum runtime
    and measured classical runtime for every qubit count of `qubit_list`.

    Arguments:
        qubit_list (Sequence[int]): Strictly ascending qubit counts; at least two for the decay fits.
        m (int): The number of data points.
        params (RuntimeParams): Gate time, measurement time and precision ratio.
        spec (FeatureMapSpec): Feature map template; only its repetition count and data map are used.
        seed (int): The base seed of the sweep and the benchmarks.
        scope (RuntimeScope): Applied to both T_Q and T_C. T_C is measured on full Gram computations and
                              divided by m (m - 1) / 2 for the per-entry scope.
        repetitions (int): Timed benchmark runs per qubit count.
        low (float): Lower bound of the coordinate sampling interval.
        high (float): Upper bound of the coordinate sampling interval.
        include_dataset (bool): Whether dataset generation is part of the measured T_C.
        workers (int): Workers of the concentration sweep. The benchmark always runs on one worker.
        growth_min_qubits (int): The smallest n used for the runtime growth fits.
        on_record (Optional[Callable[[RuntimeRecord], None]]): Called with every record once it is complete.

    Returns:
        The runtime curve.
    """
    scope = RuntimeScope(scope)
    validate_qubit_list(qubit_list)
    if len(qubit_list) < 2:
        raise ArgumentError("The runtime comparison needs at least 2 qubit counts to fit the kernel decay.")

    points = concentration_sweep(qubit_list, m, seed, spec.reps, low, high, workers)
    mu_fit, sigma_fit = fit_concentration(points)
    logger.info("Mean fit C=%.6g alpha=%.6g r2=%.4f; std fit C=%.6g alpha=%.6g r2=%.4f",
                mu_fit.C, mu_fit.alpha, mu_fit.r_squared, sigma_fit.C, sigma_fit.alpha, sigma_fit.r_squared)

    curve = RuntimeCurve(scope=scope, m=m, mu_fit=mu_fit, sigma_fit=sigma_fit, points=list(points),
                         machine=machine_descriptor())
    for label, fit in (("mean", mu_fit), ("std", sigma_fit)):
        if fit.r_squared < MIN_FIT_R_SQUARED:
            message = "The {} decay fit has r2={:.4f} < {}; the shot budget is untrustworthy.".format(
                label, fit.r_squared, MIN_FIT_R_SQUARED)
            logger.warning(message)
            curve.warnings.append(message)

    plan = ShotPlan(params.gamma, mu_fit, sigma_fit)
    for n in qubit_list:
        shots_per_entry = required_shots(n, plan)
        shots = scheduled_shots(n, plan, scope, m)
        t_circ = circuit_time(n, params)
        t_quantum = quantum_runtime(n, params, plan, scope, m)

        bench = benchmark_classical(n, m, spec.with_qubits(n), repetitions, derive_seed(seed, n),
                                    low, high, include_dataset, workers=1)
        curve.benchmarks.append(bench)
        if bench.low_resolution:
            curve.warnings.append("Timer resolution too coarse for the n={} benchmark.".format(n))
        t_classical = bench.median_s if scope is RuntimeScope.FULL_GRAM else bench.median_s / pair_count(m)

        record = RuntimeRecord(n=n,
                               layers=kernel_circuit_layer_count(n),
                               shots=shots,
                               shots_per_entry=shots_per_entry,
                               t_circ=t_circ,
                               t_quantum=t_quantum,
                               t_classical=t_classical,
                               scope=scope)
        curve.records.append(record)
        logger.info("n=%d: R=%.6g runs=%.6g T_Q=%.6g s T_C=%.6g s",
                    n, shots_per_entry, shots, t_quantum, t_classical)
        if on_record is not None:
            on_record(record)

    curve.quantum_growth = fit_growth(curve.records, lambda record: record.t_quantum, growth_min_qubits)
    curve.classical_growth = fit_growth(curve.records, lambda record: record.t_classical, growth_min_qubits)
    return curve
