"""
Dense reference implementations used by the tests.

Every gate is built as an explicit 2^n x 2^n matrix from Kronecker products (little-endian: the
rightmost factor acts on qubit 0) and applied by a matrix-vector product.
"""

import math
from functools import reduce
from typing import List, Sequence

import numpy as np

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2)
P0 = np.array([[1, 0], [0, 0]], dtype=np.complex128)
P1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)


def phase_matrix(theta: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * theta)]], dtype=np.complex128)


def _kron(factors: List[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors)


def single_qubit_operator(gate: np.ndarray, q: int, n: int) -> np.ndarray:
    return _kron([gate if k == q else I2 for k in reversed(range(n))])


def cnot_operator(control: int, target: int, n: int) -> np.ndarray:
    clear = _kron([P0 if k == control else I2 for k in reversed(range(n))])
    flip = _kron([P1 if k == control else X if k == target else I2 for k in reversed(range(n))])
    return clear + flip


def zz_feature_map_unitary(x: Sequence[float], reps: int = 1) -> np.ndarray:
    """
    The full unitary of the linearly entangled ZZ feature map, built gate by gate.
    """
    n = len(x)
    unitary = np.eye(2 ** n, dtype=np.complex128)
    for _ in range(reps):
        for q in range(n):
            unitary = single_qubit_operator(H, q, n) @ unitary
        for q in range(n):
            unitary = single_qubit_operator(phase_matrix(2 * x[q]), q, n) @ unitary
        for i in range(n - 1):
            angle = 2 * (math.pi - x[i]) * (math.pi - x[i + 1])
            unitary = cnot_operator(i, i + 1, n) @ unitary
            unitary = single_qubit_operator(phase_matrix(angle), i + 1, n) @ unitary
            unitary = cnot_operator(i, i + 1, n) @ unitary
    return unitary


def dense_embed(x: Sequence[float], reps: int = 1) -> np.ndarray:
    zero = np.zeros(2 ** len(x), dtype=np.complex128)
    zero[0] = 1
    return zz_feature_map_unitary(x, reps) @ zero


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    amplitudes = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
    return amplitudes / np.linalg.norm(amplitudes)
