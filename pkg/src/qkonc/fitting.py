"""
Exponential decay fitting: C e^{-alpha n} by ordinary least squares in log space.
"""

# Imports
# ------------------------------------------------------------

import math
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Tuple

import numpy as np

from qkonc.errors import ArgumentError, DomainError

# Classes
# ------------------------------------------------------------


@dataclass(frozen=True)
class ExpFit(object):
    """
    The parameters of the model C e^{-alpha n}.
    """

    C: float
    """The prefactor, strictly positive."""

    alpha: float
    """The decay rate per qubit. Negative values describe growth."""

    r_squared: float
    """Coefficient of determination of the log-linear regression."""

    def evaluate(self, n: float) -> float:
        """
        Returns C e^{-alpha n}.
        """
        return self.C * math.exp(-self.alpha * n)

    def to_dict(self) -> Dict[str, float]:
        """
        Returns the `{"C", "alpha", "r2"}` representation stored in `fits.json`.
        """
        return {"C": self.C, "alpha": self.alpha, "r2": self.r_squared}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExpFit":
        """
        Creates a fit from its `to_dict()` representation.
        Raises `ArgumentError` if a key is missing or a value is not a number.
        """
        try:
            return cls(float(data["C"]), float(data["alpha"]), float(data["r2"]))
        except (KeyError, TypeError, ValueError) as e:
            raise ArgumentError("Invalid fit record {!r}: {}".format(data, e)) from e


# Functions
# ------------------------------------------------------------


def fit_exponential(points: Iterable[Tuple[float, float]]) -> ExpFit:
    """
    Fits C e^{-alpha n} to the given points.

    The fit is an unweighted ordinary least squares regression of ln(value) on n;
    alpha is the negated slope and C the exponential of the intercept.

    Arguments:
        points (Iterable[Tuple[float, float]]): (n, value) pairs. Values must be strictly positive
                                                and at least two distinct n values are required.

    Returns:
        The fitted model.
    """
    pairs = [(float(n), float(value)) for n, value in points]
    if len(pairs) < 2:
        raise ArgumentError("At least 2 points are needed for a fit, got {}.".format(len(pairs)))

    ns = np.array([n for n, _ in pairs])
    values = np.array([value for _, value in pairs])
    if not np.all(values > 0) or not np.all(np.isfinite(values)):
        raise DomainError("Exponential fits need strictly positive finite values, got {}.".format(values.tolist()))
    if np.ptp(ns) == 0:
        raise ArgumentError("At least 2 distinct n values are needed for a fit.")

    logs = np.log(values)
    slope, intercept = np.polyfit(ns, logs, 1)

    if np.ptp(logs) == 0:
        r_squared = 1.0
    else:
        residuals = logs - (slope * ns + intercept)
        total = logs - logs.mean()
        r_squared = 1.0 - float(residuals @ residuals) / float(total @ total)
        r_squared = min(max(r_squared, 0.0), 1.0)

    return ExpFit(C=math.exp(intercept), alpha=-float(slope), r_squared=r_squared)
