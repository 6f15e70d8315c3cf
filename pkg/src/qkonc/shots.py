"""
Bernoulli shot-noise model of kernel estimation.

A kernel entry is estimated as the fraction of all-zeros outcomes over R runs of the kernel-estimating
circuit. The estimate has standard deviation sqrt(K (1 - K) / R); requiring the spread of the kernel
values to exceed this uncertainty by the precision ratio gamma yields the needed number of runs R(n).
"""

# Imports
# ------------------------------------------------------------

import math
from dataclasses import dataclass
from numbers import Real

import numpy as np

from qkonc.errors import ArgumentError, DomainError
from qkonc.fitting import ExpFit

# Module constants
# ------------------------------------------------------------

DEFAULT_GAMMA: float = 10.0
"""
The default precision ratio.
"""

# Classes
# ------------------------------------------------------------


@dataclass(frozen=True)
class ShotPlan(object):
    """
    The inputs of the shot budget: the precision ratio and the fitted decay of the kernel
    mean and standard deviation.
    """

    gamma: float
    """The precision ratio sigma(K) / sigma(K_estimated), strictly positive."""

    mu_fit: ExpFit
    """The decay of the mean kernel value."""

    sigma_fit: ExpFit
    """The decay of the standard deviation of the kernel values."""

    def __post_init__(self) -> None:
        if not (math.isfinite(self.gamma) and self.gamma > 0):
            raise ArgumentError("The precision ratio must be positive, got {!r}.".format(self.gamma))
        if not (self.mu_fit.C > 0 and self.sigma_fit.C > 0):
            raise ArgumentError("Fit prefactors must be positive, got {} and {}.".format(
                self.mu_fit.C, self.sigma_fit.C))

    def modeled_mean(self, n: int) -> float:
        """
        Returns the modeled mean kernel value C_mu e^{-alpha_mu n}.
        """
        return self.mu_fit.evaluate(n)

    def modeled_std(self, n: int) -> float:
        """
        Returns the modeled kernel spread C_sigma e^{-alpha_sigma n}.
        """
        return self.sigma_fit.evaluate(n)


# Functions
# ------------------------------------------------------------


def estimator_std(k: float, r: float) -> float:
    """
    Returns the standard deviation sqrt(k (1 - k) / r) of a kernel value estimated from `r` shots.

    Arguments:
        k (float): The true kernel value, in [0, 1].
        r (float): The number of shots, at least 1.
    """
    _check_probability(k)
    if not r >= 1:
        raise ArgumentError("The number of repetitions must be at least 1, got {!r}.".format(r))
    return math.sqrt(k * (1.0 - k) / r)


def required_shots(n: int, plan: ShotPlan) -> float:
    """
    Returns the number of circuit runs R(n) needed per kernel entry:

        R(n) = gamma^2 (C_mu / C_sigma^2) e^{(2 alpha_sigma - alpha_mu) n} [1 - C_mu e^{-alpha_mu n}]

    The value is real; callers round up when they schedule runs.

    Arguments:
        n (int): The number of qubits, at least 1.
        plan (ShotPlan): The precision ratio and the fitted decays.
    """
    if n < 1:
        raise ArgumentError("The qubit count must be at least 1, got {}.".format(n))

    mu, sigma = plan.mu_fit, plan.sigma_fit
    modeled_mean = mu.C * math.exp(-mu.alpha * n)
    if modeled_mean > 1.0:
        raise DomainError("The fitted mean kernel value at n={} is {:.6g} > 1; the fit is invalid there.".format(
            n, modeled_mean))

    return (plan.gamma ** 2
            * (mu.C / sigma.C ** 2)
            * math.exp((2.0 * sigma.alpha - mu.alpha) * n)
            * (1.0 - modeled_mean))


def sample_kernel_estimate(k: float, r: int, seed: int) -> float:
    """
    Simulates the estimation of a kernel value from `r` shots.

    Draws `r` Bernoulli(k) outcomes from a numpy PCG64 generator seeded with `seed` and
    returns the success fraction.
    """
    _check_probability(k)
    _check_shots(r)
    rng = np.random.default_rng(seed)
    return int(rng.binomial(r, k)) / r


def sample_kernel_estimates(k: float, r: int, trials: int, seed: int) -> np.ndarray:
    """
    Simulates `trials` independent kernel estimates of `r` shots each from a single generator.

    Returns:
        The array of success fractions.
    """
    _check_probability(k)
    _check_shots(r)
    if trials < 1:
        raise ArgumentError("The number of trials must be at least 1, got {}.".format(trials))
    rng = np.random.default_rng(seed)
    return rng.binomial(r, k, size=trials) / r


def _check_probability(k: float) -> None:
    if not 0.0 <= k <= 1.0:
        raise DomainError("A kernel value must lie in [0, 1], got {!r}.".format(k))


def _check_shots(r: int) -> None:
    if isinstance(r, bool) or not isinstance(r, Real) or not math.isfinite(r) or int(r) != r or r < 1:
        raise ArgumentError("The number of repetitions must be a positive integer, got {!r}.".format(r))
