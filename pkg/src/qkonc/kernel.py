"""
Fidelity kernel evaluation, Gram matrix assembly and concentration statistics of the independent kernel entries.
"""

# Imports
# ------------------------------------------------------------

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed

from qkonc.errors import ArgumentError
from qkonc.simulation.featuremap import FeatureMapSpec, embed
from qkonc.simulation.statevector import inner_product

# Module constants
# ------------------------------------------------------------

logger = logging.getLogger(__name__)

DEFAULT_LOW: float = 0.0
"""
Default lower bound of the coordinate sampling interval (radians).
"""

DEFAULT_HIGH: float = 2.0 * math.pi
"""
Default upper bound (exclusive) of the coordinate sampling interval (radians).
"""

SEED_DERIVATION: str = "seed XOR n"
"""
How the dataset seed of a sweep point is derived from the base seed; recorded in reports.
"""

# Classes
# ------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Dataset(object):
    """
    `m` points of dimension `n`, every coordinate drawn i.i.d. uniformly from [low, high).
    """

    points: np.ndarray
    """The (m, n) array of data points."""

    seed: int
    """The seed the points were generated from."""

    low: float = DEFAULT_LOW
    high: float = DEFAULT_HIGH

    @property
    def m(self) -> int:
        """
        The number of points.
        """
        return self.points.shape[0]

    @property
    def n(self) -> int:
        """
        The dimension of the points.
        """
        return self.points.shape[1]


class GramMatrix(object):
    """
    An m x m matrix of kernel values K_ij = K(x_i, x_j).

    Values are kept unclamped; the concentration statistics use the raw values.
    """

    # Initialization
    # ------------------------------------------------------------

    def __init__(self, values: np.ndarray) -> None:
        """
        Initialization.

        Arguments:
            values (np.ndarray): A square real matrix.
        """
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise ArgumentError("A Gram matrix must be square, got shape {}.".format(values.shape))

        self.values: np.ndarray = values
        """The kernel values."""

    # Properties
    # ------------------------------------------------------------

    @property
    def m(self) -> int:
        """
        The number of data points the matrix was computed for.
        """
        return self.values.shape[0]

    # Public methods
    # ------------------------------------------------------------

    def off_diagonal(self) -> np.ndarray:
        """
        Returns the m (m - 1) / 2 independent entries (strict upper triangle, row major).
        """
        return self.values[np.triu_indices(self.m, k=1)]

    def min_eigenvalue(self) -> float:
        """
        Returns the smallest eigenvalue of the symmetric part of the matrix.
        """
        return float(np.linalg.eigvalsh(0.5 * (self.values + self.values.T))[0])


@dataclass(frozen=True)
class ConcentrationPoint(object):
    """
    The concentration statistics of one sweep point.
    """

    n: int
    mean: float
    std: float
    m: int
    seed: int
    """The seed of the dataset the point was computed from (already derived for `n`)."""


# Functions
# ------------------------------------------------------------


def derive_seed(seed: int, n: int) -> int:
    """
    Returns the dataset seed of the sweep point with `n` qubits.
    """
    return int(seed) ^ int(n)


def generate_dataset(m: int,
                     n: int,
                     seed: int,
                     low: float = DEFAULT_LOW,
                     high: float = DEFAULT_HIGH) -> Dataset:
    """
    Generates a reproducible dataset of `m` points of dimension `n`.

    Arguments:
        m (int): The number of points, at least 2.
        n (int): The dimension of the points, at least 1.
        seed (int): Seed of the numpy PCG64 generator the points are drawn from.
        low (float): Inclusive lower bound of every coordinate.
        high (float): Exclusive upper bound of every coordinate.

    Returns:
        The generated dataset.
    """
    if m < 2:
        raise ArgumentError("A dataset needs at least 2 points, got {}.".format(m))
    if n < 1:
        raise ArgumentError("The data dimension must be at least 1, got {}.".format(n))
    if not (math.isfinite(low) and math.isfinite(high)) or not low < high:
        raise ArgumentError("Invalid sampling interval [{}, {}).".format(low, high))
    if seed < 0:
        raise ArgumentError("The seed must be non-negative, got {}.".format(seed))

    rng = np.random.default_rng(seed)
    points = rng.uniform(low, high, size=(m, n))
    # uniform() may round up to `high` for tiny intervals.
    points = np.where(points < high, points, np.nextafter(high, low))
    return Dataset(points, int(seed), float(low), float(high))


def fidelity_kernel(x: Sequence[float], y: Sequence[float], spec: FeatureMapSpec) -> float:
    """
    Computes K(x, y) = |<phi(y)|phi(x)>|^2, clamped to [0, 1].

    Arguments:
        x (Sequence[float]): The first data point.
        y (Sequence[float]): The second data point.
        spec (FeatureMapSpec): The feature map that embeds the points.

    Returns:
        The kernel value.
    """
    if len(x) != len(y):
        raise ArgumentError("Data points of different dimension: {} and {}.".format(len(x), len(y)))

    overlap = inner_product(embed(y, spec), embed(x, spec))
    value = overlap.real * overlap.real + overlap.imag * overlap.imag
    return min(max(value, 0.0), 1.0)


def gram_matrix(ds: Dataset, spec: FeatureMapSpec, workers: int = 1) -> GramMatrix:
    """
    Computes the Gram matrix of the dataset.

    Every point is embedded once, then each entry of the upper triangle is computed
    from its own inner product and mirrored. The result does not depend on `workers`.

    Arguments:
        ds (Dataset): The dataset.
        spec (FeatureMapSpec): The feature map; `spec.n` must equal the data dimension.
        workers (int): The number of joblib workers for embedding and row evaluation.

    Returns:
        The Gram matrix.
    """
    if ds.n != spec.n:
        raise ArgumentError("The data dimension ({}) differs from the qubit count ({}).".format(ds.n, spec.n))
    if workers < 1:
        raise ArgumentError("The worker count must be at least 1, got {}.".format(workers))

    if workers == 1:
        states = np.stack([_embed_amplitudes(x, spec) for x in ds.points])
        bras = states.conj()
        rows = [_gram_row(bras, states, i) for i in range(ds.m)]
    else:
        parallel = Parallel(n_jobs=workers, prefer="threads")
        states = np.stack(parallel(delayed(_embed_amplitudes)(x, spec) for x in ds.points))
        bras = states.conj()
        rows = parallel(delayed(_gram_row)(bras, states, i) for i in range(ds.m))

    values = np.zeros((ds.m, ds.m))
    for i, row in enumerate(rows):
        values[i, i:] = row
        values[i:, i] = row
    return GramMatrix(values)


def check_gram(g: GramMatrix, psd_tolerance: float = 1e-8) -> Dict[str, bool]:
    """
    Checks the structural properties every fidelity Gram matrix has.

    Returns:
        A dictionary with the `symmetric`, `unit_diagonal`, `bounded_0_1` and
        `positive_semidefinite` flags.
    """
    values = g.values
    return {
        "symmetric": bool(np.allclose(values, values.T, rtol=0.0, atol=1e-12)),
        "unit_diagonal": bool(np.allclose(np.diag(values), 1.0, rtol=0.0, atol=1e-10)),
        "bounded_0_1": bool(np.all(values >= -1e-12) and np.all(values <= 1.0 + 1e-12)),
        "positive_semidefinite": g.min_eigenvalue() >= -psd_tolerance,
    }


def concentration_stats(g: GramMatrix) -> Tuple[float, float]:
    """
    Computes the mean 2 / (m (m - 1)) sum_{i > j} K_ij of the independent kernel entries
    and their population standard deviation.

    Arguments:
        g (GramMatrix): The Gram matrix, m >= 2.

    Returns:
        The (mean, std) pair.
    """
    if g.m < 2:
        raise ArgumentError("Concentration statistics need m >= 2, got {}.".format(g.m))

    entries = g.off_diagonal()
    if np.ptp(entries) == 0:
        return float(entries[0]), 0.0
    return float(np.mean(entries)), float(np.std(entries))


def concentration_sweep(qubit_list: Sequence[int],
                        m: int,
                        seed: int,
                        reps: int = 1,
                        low: float = DEFAULT_LOW,
                        high: float = DEFAULT_HIGH,
                        workers: int = 1) -> List[ConcentrationPoint]:
    """
    Measures the kernel concentration for every qubit count of `qubit_list`.

    A fresh dataset is generated for each n with seed `derive_seed(seed, n)`.

    Arguments:
        qubit_list (Sequence[int]): Strictly ascending, non-empty list of qubit counts.
        m (int): The number of data points per dataset.
        seed (int): The base seed.
        reps (int): The repetition count of the feature map.
        low (float): Lower bound of the coordinate sampling interval.
        high (float): Upper bound of the coordinate sampling interval.
        workers (int): The number of workers used for Gram assembly.

    Returns:
        One `ConcentrationPoint` per qubit count.
    """
    validate_qubit_list(qubit_list)

    result: List[ConcentrationPoint] = []
    for n in qubit_list:
        point_seed = derive_seed(seed, n)
        ds = generate_dataset(m, n, point_seed, low, high)
        g = gram_matrix(ds, FeatureMapSpec(n, reps), workers)
        failed = [name for name, passed in check_gram(g).items() if not passed]
        if failed:
            logger.warning("n=%d: the Gram matrix fails the %s check(s).", n, ", ".join(failed))
        mean, std = concentration_stats(g)
        logger.info("n=%d m=%d: mean kernel %.6g, std %.6g", n, m, mean, std)
        result.append(ConcentrationPoint(n=n, mean=mean, std=std, m=m, seed=point_seed))

    return result


def validate_qubit_list(qubit_list: Optional[Sequence[int]]) -> None:
    """
    Raises `ArgumentError` unless the list is non-empty, strictly ascending and positive.
    """
    if not qubit_list:
        raise ArgumentError("The qubit list must not be empty.")
    if qubit_list[0] < 1:
        raise ArgumentError("Qubit counts must be positive, got {}.".format(qubit_list[0]))
    for previous, current in zip(qubit_list, qubit_list[1:]):
        if current <= previous:
            raise ArgumentError("The qubit list must be strictly ascending: {}.".format(list(qubit_list)))


def _embed_amplitudes(x: np.ndarray, spec: FeatureMapSpec) -> np.ndarray:
    return embed(x, spec).amplitudes


def _gram_row(bras: np.ndarray, states: np.ndarray, i: int) -> np.ndarray:
    """
    Returns |<phi_j|phi_i>|^2 for j >= i. `bras` holds the conjugated `states`.
    """
    overlaps = bras[i:] @ states[i]
    return overlaps.real * overlaps.real + overlaps.imag * overlaps.imag
