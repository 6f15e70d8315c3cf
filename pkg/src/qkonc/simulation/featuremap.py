"""
The linearly entangled ZZ feature map, its layer structure and the kernel-estimating circuit built from it.

One repetition of the map on n qubits consists of a Hadamard layer on all qubits, a phase layer with
angle 2 x_i on qubit i, and for every neighbouring pair (i, i + 1) the block
CNOT(i, i + 1), P(2 (pi - x_i)(pi - x_{i+1})) on qubit i + 1, CNOT(i, i + 1).
"""

# Imports
# ------------------------------------------------------------

import math
from dataclasses import dataclass
from numbers import Integral
from typing import Iterator, List, Sequence, Tuple, Union

import numpy as np

from qkonc.errors import ArgumentError
from qkonc.simulation.statevector import Statevector

# Module constants
# ------------------------------------------------------------

HAVLICEK: str = "havlicek"
"""
Data-map tag: single-qubit angle 2 x_i, pair angle 2 (pi - x_i)(pi - x_j).
"""

DATA_MAPS: Tuple[str, ...] = (HAVLICEK,)
"""
The supported data-map conventions.
"""

# Classes
# ------------------------------------------------------------


@dataclass(frozen=True)
class FeatureMapSpec(object):
    """
    Describes a ZZ feature map instance.
    """

    n: int
    """The number of qubits, equal to the data dimension."""

    reps: int = 1
    """The number of repetitions of the map."""

    data_map: str = HAVLICEK
    """The convention that maps data to phase angles."""

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, Integral) or self.n < 1:
            raise ArgumentError("The feature map needs at least one qubit, got {!r}.".format(self.n))
        if isinstance(self.reps, bool) or not isinstance(self.reps, Integral) or self.reps < 1:
            raise ArgumentError("The repetition count must be a positive integer, got {!r}.".format(self.reps))
        if self.data_map not in DATA_MAPS:
            raise ArgumentError("Unknown data map {!r}, expected one of {}.".format(self.data_map, DATA_MAPS))

    def with_qubits(self, n: int) -> "FeatureMapSpec":
        """
        Returns a copy of the spec with the qubit count replaced by `n`.
        """
        return FeatureMapSpec(n, self.reps, self.data_map)


@dataclass(frozen=True)
class HadamardAll(object):
    """A Hadamard gate applied simultaneously to every qubit."""

    def apply(self, state: Statevector) -> None:
        """
        Applies a Hadamard gate to every qubit of `state`.
        """
        for q in range(state.n):
            state.apply_hadamard(q)

    def inverse(self) -> "HadamardAll":
        """
        The layer is self-inverse.
        """
        return self


@dataclass(frozen=True)
class PhaseLayer(object):
    """Phase gates applied simultaneously to distinct qubits."""

    phases: Tuple[Tuple[int, float], ...]
    """The (qubit, angle) pairs of the layer."""

    def apply(self, state: Statevector) -> None:
        """
        Applies the phase gates of the layer to `state`.
        """
        for q, theta in self.phases:
            state.apply_phase(q, theta)

    def inverse(self) -> "PhaseLayer":
        """
        Returns the layer with every phase angle negated.
        """
        return PhaseLayer(tuple((q, -theta) for q, theta in self.phases))


@dataclass(frozen=True)
class CnotLayer(object):
    """A single CNOT gate."""

    control: int
    target: int

    def apply(self, state: Statevector) -> None:
        """
        Applies the CNOT gate to `state`.
        """
        state.apply_cnot(self.control, self.target)

    def inverse(self) -> "CnotLayer":
        """
        The CNOT gate is self-inverse.
        """
        return self


Layer = Union[HadamardAll, PhaseLayer, CnotLayer]


class CircuitLayers(object):
    """
    An ordered list of gate layers acting on a fixed number of qubits.

    Layer counting treats a Hadamard on all qubits and a full phase sweep as one layer each.
    """

    # Initialization
    # ------------------------------------------------------------

    def __init__(self, n: int, layers: Sequence[Layer] = ()) -> None:
        """
        Initialization.

        Arguments:
            n (int): The number of qubits the circuit acts on.
            layers (Sequence[Layer]): The initial layers of the circuit.
        """
        self.n: int = n
        """The number of qubits the circuit acts on."""

        self._layers: List[Layer] = list(layers)

    # Special methods
    # ------------------------------------------------------------

    def __iter__(self) -> Iterator[Layer]:
        """
        Iterates over the layers in execution order.
        """
        return iter(self._layers)

    def __len__(self) -> int:
        """
        The number of layers in the circuit.
        """
        return len(self._layers)

    def __add__(self, other: "CircuitLayers") -> "CircuitLayers":
        """
        Concatenates two circuits: `other` runs after `self`.
        """
        if other.n != self.n:
            raise ArgumentError("Cannot concatenate circuits on {} and {} qubits.".format(self.n, other.n))
        return CircuitLayers(self.n, self._layers + other._layers)

    # Properties
    # ------------------------------------------------------------

    @property
    def layers(self) -> Tuple[Layer, ...]:
        """
        The layers of the circuit in execution order.
        """
        return tuple(self._layers)

    # Public methods
    # ------------------------------------------------------------

    def append(self, layer: Layer) -> None:
        """
        Appends a layer to the end of the circuit.

        Arguments:
            layer (Layer): The layer to append.
        """
        self._layers.append(layer)

    def apply(self, state: Statevector) -> Statevector:
        """
        Applies the circuit to the given state in place.

        Arguments:
            state (Statevector): The state to transform. Its qubit count must match the circuit's.

        Returns:
            The transformed state.
        """
        if state.n != self.n:
            raise ArgumentError("A {}-qubit circuit cannot act on a {}-qubit state.".format(self.n, state.n))
        for layer in self._layers:
            layer.apply(state)
        return state

    def inverse(self) -> "CircuitLayers":
        """
        Returns the adjoint circuit: layers reversed, phase angles negated.
        """
        return CircuitLayers(self.n, [layer.inverse() for layer in reversed(self._layers)])


# Functions
# ------------------------------------------------------------


def build_feature_map(x: Sequence[float], spec: FeatureMapSpec) -> CircuitLayers:
    """
    Builds the ZZ feature map circuit U(x).

    Arguments:
        x (Sequence[float]): The data point, one finite coordinate per qubit.
        spec (FeatureMapSpec): The feature map description.

    Returns:
        The circuit, `spec.reps * (2 + 3 (n - 1))` layers long.
    """
    x = _as_point(x, spec.n)
    n = spec.n

    single = tuple((i, 2.0 * float(x[i])) for i in range(n))
    pair = [2.0 * (math.pi - float(x[i])) * (math.pi - float(x[i + 1])) for i in range(n - 1)]

    circuit = CircuitLayers(n)
    for _ in range(spec.reps):
        circuit.append(HadamardAll())
        circuit.append(PhaseLayer(single))
        for i in range(n - 1):
            circuit.append(CnotLayer(i, i + 1))
            circuit.append(PhaseLayer(((i + 1, pair[i]),)))
            circuit.append(CnotLayer(i, i + 1))
    return circuit


def kernel_circuit(x: Sequence[float], x_prime: Sequence[float], spec: FeatureMapSpec) -> CircuitLayers:
    """
    Builds the kernel-estimating circuit U^dagger(x') U(x).

    Measuring the all-zeros outcome of this circuit applied to |0...0> has probability K(x, x').
    """
    return build_feature_map(x, spec) + build_feature_map(x_prime, spec).inverse()


def kernel_circuit_layer_count(n: int) -> int:
    """
    Returns the number of layers in the kernel-estimating circuit of the single-repetition
    linearly entangled ZZ feature map: 4 + 6 (n - 1).

    Arguments:
        n (int): The number of qubits, at least 1.
    """
    if isinstance(n, bool) or not isinstance(n, Integral) or n < 1:
        raise ArgumentError("The qubit count must be a positive integer, got {!r}.".format(n))
    return 4 + 6 * (int(n) - 1)


def embed(x: Sequence[float], spec: FeatureMapSpec) -> Statevector:
    """
    Prepares the embedded state |phi(x)> = U(x)|0...0>.

    Arguments:
        x (Sequence[float]): The data point.
        spec (FeatureMapSpec): The feature map description.

    Returns:
        The embedded state.
    """
    return build_feature_map(x, spec).apply(Statevector.zero_state(spec.n))


def kernel_from_circuit(x: Sequence[float], x_prime: Sequence[float], spec: FeatureMapSpec) -> float:
    """
    Evaluates K(x, x') by running the kernel-estimating circuit and reading the all-zeros probability.

    This is the quantity a quantum device estimates from shots; it equals the overlap based kernel.
    """
    state = kernel_circuit(x, x_prime, spec).apply(Statevector.zero_state(spec.n))
    return state.probability_of_zero()


def _as_point(x: Sequence[float], n: int) -> np.ndarray:
    """
    Validates a data point and returns it as a float array.
    """
    point = np.asarray(x, dtype=np.float64)
    if point.ndim != 1 or point.shape[0] != n:
        raise ArgumentError("Expected a data point of dimension {}, got shape {}.".format(n, point.shape))
    if not np.all(np.isfinite(point)):
        raise ArgumentError("Data point coordinates must be finite.")
    return point
