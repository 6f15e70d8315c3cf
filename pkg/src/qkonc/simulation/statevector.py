"""
Dense statevector representation and in-place application of the gates the ZZ feature map needs.

Qubit ordering is little-endian everywhere in the project: qubit 0 is the least significant bit of the
basis index. Gates work on an n-dimensional view of the amplitude vector (one axis of length 2 per
qubit), so every gate is a strided slice operation and no 2^n x 2^n matrix is ever built.
"""

# Imports
# ------------------------------------------------------------

import math
from numbers import Integral
from typing import Tuple

import numpy as np

from qkonc.errors import ArgumentError, QubitIndexError, SizeError

# Module constants
# ------------------------------------------------------------

MAX_QUBITS: int = 24
"""
The largest supported qubit count (a 2^24 element complex128 vector takes 256 MiB).
"""

_INV_SQRT2: float = 1.0 / math.sqrt(2.0)

# Length-1 slices keep every selection a writable view, even for a single qubit.
_CLEAR: slice = slice(0, 1)
_SET: slice = slice(1, 2)

# Classes
# ------------------------------------------------------------


class Statevector(object):
    """
    The complex amplitude vector of an n-qubit pure state.

    Gate methods mutate the state in place and return the state itself, so calls can be chained.
    """

    # Initialization
    # ------------------------------------------------------------

    def __init__(self, amplitudes: np.ndarray) -> None:
        """
        Initialization.

        Arguments:
            amplitudes (np.ndarray): The amplitude vector. Its length must be a power of two between
                                     2 and 2^MAX_QUBITS. The array is copied into a complex128 buffer.
        """
        amplitudes = np.array(amplitudes, dtype=np.complex128).reshape(-1)
        size = amplitudes.shape[0]
        n = size.bit_length() - 1
        if size < 2 or size != 1 << n:
            raise SizeError("The amplitude vector length must be a power of two >= 2, got {}.".format(size))
        if n > MAX_QUBITS:
            raise SizeError("At most {} qubits are supported, got {}.".format(MAX_QUBITS, n))

        self._n: int = n
        """The number of qubits."""

        self._amplitudes: np.ndarray = amplitudes
        """The amplitude buffer, length 2^n."""

        # Axis k of the tensor view addresses qubit n - 1 - k (C order, little-endian qubits).
        self._tensor: np.ndarray = amplitudes.reshape((2,) * n)

    @classmethod
    def zero_state(cls, n: int) -> "Statevector":
        """
        Creates the |0...0> state of `n` qubits.

        Arguments:
            n (int): The number of qubits, 1 <= n <= MAX_QUBITS.

        Returns:
            The new state with amplitude 1 on basis index 0.
        """
        if not isinstance(n, Integral) or isinstance(n, bool) or not 1 <= n <= MAX_QUBITS:
            raise SizeError("The qubit count must be an integer in [1, {}], got {!r}.".format(MAX_QUBITS, n))

        amplitudes = np.zeros(1 << int(n), dtype=np.complex128)
        amplitudes[0] = 1.0
        return cls(amplitudes)

    # Special methods
    # ------------------------------------------------------------

    def __len__(self) -> int:
        """
        The number of amplitudes (2^n).
        """
        return self._amplitudes.shape[0]

    def __repr__(self) -> str:
        return "Statevector(n={})".format(self._n)

    # Properties
    # ------------------------------------------------------------

    @property
    def n(self) -> int:
        """
        The number of qubits.
        """
        return self._n

    @property
    def amplitudes(self) -> np.ndarray:
        """
        The amplitude vector. The returned array is the live buffer of the state.
        """
        return self._amplitudes

    # Public methods
    # ------------------------------------------------------------

    def copy(self) -> "Statevector":
        """
        Returns an independent copy of the state.
        """
        return Statevector(self._amplitudes)

    def norm(self) -> float:
        """
        Returns the Euclidean norm of the amplitude vector.
        """
        return float(np.linalg.norm(self._amplitudes))

    def probability_of_zero(self) -> float:
        """
        Returns the probability of measuring the all-zeros bitstring.
        """
        amplitude = self._amplitudes[0]
        return float(amplitude.real * amplitude.real + amplitude.imag * amplitude.imag)

    def apply_hadamard(self, q: int) -> "Statevector":
        """
        Applies a Hadamard gate to qubit `q`.

        For every basis pair differing only in bit `q` the amplitudes (a, b) become
        ((a + b) / sqrt(2), (a - b) / sqrt(2)).

        Arguments:
            q (int): The index of the target qubit.

        Returns:
            The state itself.
        """
        low, high = self._halves(q)
        a = low.copy()
        low += high
        low *= _INV_SQRT2
        a -= high
        a *= _INV_SQRT2
        high[...] = a
        return self

    def apply_phase(self, q: int, theta: float) -> "Statevector":
        """
        Applies the phase gate P(theta) to qubit `q`: amplitudes whose basis index has bit `q`
        set are multiplied by e^{i theta}.

        Arguments:
            q (int): The index of the target qubit.
            theta (float): The phase angle in radians. Must be finite.

        Returns:
            The state itself.
        """
        _, high = self._halves(q)
        if not math.isfinite(theta):
            raise ArgumentError("The phase angle must be finite, got {!r}.".format(theta))

        if theta != 0:
            high *= complex(math.cos(theta), math.sin(theta))
        return self

    def apply_cnot(self, control: int, target: int) -> "Statevector":
        """
        Applies a CNOT gate: amplitudes of basis pairs that have the control bit set and differ
        only in the target bit are swapped.

        Arguments:
            control (int): The index of the control qubit.
            target (int): The index of the target qubit.

        Returns:
            The state itself.
        """
        control_axis = self._axis(control)
        target_axis = self._axis(target)
        if control_axis == target_axis:
            raise ArgumentError("The control and target qubits must differ, both are {}.".format(control))

        zero = [slice(None)] * self._n
        zero[control_axis] = _SET
        zero[target_axis] = _CLEAR
        one = list(zero)
        one[target_axis] = _SET

        zero_view = self._tensor[tuple(zero)]
        one_view = self._tensor[tuple(one)]
        swapped = zero_view.copy()
        zero_view[...] = one_view
        one_view[...] = swapped
        return self

    # Protected methods
    # ------------------------------------------------------------

    def _axis(self, q: int) -> int:
        """
        Returns the tensor view axis of qubit `q` after validating the index.
        """
        if not isinstance(q, Integral) or isinstance(q, bool) or not 0 <= q < self._n:
            raise QubitIndexError("Qubit index {!r} is out of range for {} qubits.".format(q, self._n))
        return self._n - 1 - int(q)

    def _halves(self, q: int) -> Tuple[np.ndarray, np.ndarray]:
        """
        Returns the views of the amplitudes whose basis index has bit `q` clear and set.
        """
        axis = self._axis(q)
        low = [slice(None)] * self._n
        high = list(low)
        low[axis] = _CLEAR
        high[axis] = _SET
        return self._tensor[tuple(low)], self._tensor[tuple(high)]


# Functions
# ------------------------------------------------------------


def zero_state(n: int) -> Statevector:
    """
    Creates the |0...0> state of `n` qubits. Alias of `Statevector.zero_state()`.
    """
    return Statevector.zero_state(n)


def inner_product(a: Statevector, b: Statevector) -> complex:
    """
    Computes <a|b> = sum_k conj(a_k) * b_k.

    Arguments:
        a (Statevector): The bra state.
        b (Statevector): The ket state.

    Returns:
        The complex inner product.
    """
    if a.n != b.n:
        raise SizeError("Cannot take the inner product of a {}-qubit and a {}-qubit state.".format(a.n, b.n))
    return complex(np.vdot(a.amplitudes, b.amplitudes))
