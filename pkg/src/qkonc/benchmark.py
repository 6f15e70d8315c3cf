"""
Wall-clock benchmark of classical Gram matrix simulation.
"""

# Imports
# ------------------------------------------------------------

import logging
import os
import platform
import time
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np
from threadpoolctl import threadpool_info, threadpool_limits

from qkonc.errors import ArgumentError
from qkonc.kernel import DEFAULT_HIGH, DEFAULT_LOW, generate_dataset, gram_matrix
from qkonc.simulation.featuremap import FeatureMapSpec

# Module constants
# ------------------------------------------------------------

logger = logging.getLogger(__name__)

MIN_REPETITIONS: int = 3
"""
The smallest accepted number of timed runs.
"""

RESOLUTION_LIMIT: float = 0.01
"""
Measurements shorter than 1 / RESOLUTION_LIMIT timer ticks are flagged as low resolution.
"""

BLAS_THREADS: int = 1
"""
Thread limit of the native BLAS and OpenMP pools while a benchmark runs.
"""

# Classes
# ------------------------------------------------------------


@dataclass(frozen=True)
class BenchmarkResult(object):
    """
    The outcome of one classical simulation benchmark.
    """

    n: int
    m: int

    median_s: float
    """The median wall-clock time of the timed runs in seconds."""

    samples: Tuple[float, ...]
    """The individual timed runs in seconds."""

    timer_resolution_s: float
    """The resolution of the clock the runs were timed with."""

    low_resolution: bool
    """Whether the timer resolution is coarser than 1% of the median."""

    threads: int = BLAS_THREADS
    """The largest native thread pool size observed inside the timed region."""

    machine: Dict[str, str] = field(default_factory=dict)
    """Descriptor of the machine the benchmark ran on."""


# Functions
# ------------------------------------------------------------


def machine_descriptor() -> Dict[str, str]:
    """
    Returns a description of the machine the process runs on.
    """
    return {
        "platform": platform.platform(),
        "machine": platform.machine(),
        "processor": platform.processor(),
        "cpu_count": str(os.cpu_count()),
        "python": platform.python_version(),
        "numpy": np.__version__,
        "thread_pools": ", ".join(sorted("{}:{}".format(pool["internal_api"], pool["num_threads"])
                                        for pool in threadpool_info())),
    }


def benchmark_classical(n: int,
                        m: int,
                        spec: FeatureMapSpec,
                        repetitions: int = MIN_REPETITIONS,
                        seed: int = 0,
                        low: float = DEFAULT_LOW,
                        high: float = DEFAULT_HIGH,
                        include_dataset: bool = False,
                        workers: int = 1) -> BenchmarkResult:
    """
    Measures the time of a full classical Gram matrix computation.

    One untimed warmup run precedes `repetitions` timed runs; the median is reported.
    Runs are timed with the monotonic `time.perf_counter()` clock, with the native thread pools
    (BLAS, OpenMP) limited to `BLAS_THREADS`.

    Arguments:
        n (int): The number of qubits.
        m (int): The number of data points.
        spec (FeatureMapSpec): The feature map; its qubit count must equal `n`.
        repetitions (int): The number of timed runs, at least 3.
        seed (int): The seed of the benchmarked dataset.
        low (float): Lower bound of the coordinate sampling interval.
        high (float): Upper bound of the coordinate sampling interval.
        include_dataset (bool): Whether dataset generation is part of the timed region.
        workers (int): Gram assembly workers. Anything but 1 measures parallel, not one-core, cost.

    Returns:
        The benchmark result.
    """
    if repetitions < MIN_REPETITIONS:
        raise ArgumentError("At least {} benchmark repetitions are needed, got {}.".format(
            MIN_REPETITIONS, repetitions))
    if spec.n != n:
        raise ArgumentError("The feature map acts on {} qubits, the benchmark on {}.".format(spec.n, n))

    dataset = generate_dataset(m, n, seed, low, high)

    def run() -> None:
        ds = generate_dataset(m, n, seed, low, high) if include_dataset else dataset
        gram_matrix(ds, spec, workers)

    samples = []
    with threadpool_limits(limits=BLAS_THREADS):
        threads = max((pool["num_threads"] for pool in threadpool_info()), default=BLAS_THREADS)
        run()
        for _ in range(repetitions):
            start = time.perf_counter()
            run()
            samples.append(time.perf_counter() - start)

    median = float(np.median(samples))
    resolution = time.get_clock_info("perf_counter").resolution
    low_resolution = resolution > RESOLUTION_LIMIT * median
    if low_resolution:
        logger.warning("Timer resolution %.3g s is coarser than 1%% of the measured %.3g s (n=%d).",
                       resolution, median, n)
    logger.info("n=%d m=%d: classical Gram simulation median %.6g s over %d runs", n, m, median, repetitions)

    return BenchmarkResult(n=n,
                           m=m,
                           median_s=median,
                           samples=tuple(samples),
                           timer_resolution_s=resolution,
                           low_resolution=low_resolution,
                           threads=threads,
                           machine=machine_descriptor())
