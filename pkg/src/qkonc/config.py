"""
Experiment configuration: defaults, JSON persistence and validation.
"""

# Imports
# ------------------------------------------------------------

import dataclasses
import json
import math
import os
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Tuple

from qkonc.benchmark import MIN_REPETITIONS
from qkonc.errors import ArgumentError
from qkonc.kernel import DEFAULT_HIGH, DEFAULT_LOW, validate_qubit_list
from qkonc.runtime import DEFAULT_GATE_TIME, DEFAULT_GROWTH_MIN_QUBITS, DEFAULT_MEASUREMENT_TIME, RuntimeScope
from qkonc.shots import DEFAULT_GAMMA
from qkonc.simulation.featuremap import FeatureMapSpec
from qkonc.simulation.statevector import MAX_QUBITS

# Module constants
# ------------------------------------------------------------

SEED_ENV_VAR: str = "QKONC_SEED"
"""
Environment variable consulted for the seed when neither a flag nor the config file sets it.
"""

DEFAULT_SEED: int = 42

DEFAULT_QUBITS: Tuple[int, ...] = (2, 4, 6, 8, 10, 12)

# Classes
# ------------------------------------------------------------


@dataclass(frozen=True)
class ExperimentConfig(object):
    """
    Every setting of a concentration or runtime comparison experiment.
    """

    qubits: Tuple[int, ...] = DEFAULT_QUBITS
    """The strictly ascending qubit counts of the sweep."""

    m: int = 100
    """The number of data points per dataset."""

    seed: int = DEFAULT_SEED
    """The base seed; the dataset of qubit count n uses seed XOR n."""

    reps: int = 1
    """The repetition count of the feature map."""

    low: float = DEFAULT_LOW
    high: float = DEFAULT_HIGH

    t_gate: float = DEFAULT_GATE_TIME
    t_meas: float = DEFAULT_MEASUREMENT_TIME
    gamma: float = DEFAULT_GAMMA

    scope: RuntimeScope = RuntimeScope.FULL_GRAM

    out: str = "results"
    """The output directory."""

    bench_repetitions: int = MIN_REPETITIONS
    """Timed runs per classical benchmark."""

    include_dataset_time: bool = False
    """Whether dataset generation is part of the measured classical time."""

    workers: int = 1
    """Parallel Gram workers of the concentration sweep. Benchmarks always use one."""

    growth_min_qubits: int = DEFAULT_GROWTH_MIN_QUBITS
    """The smallest qubit count used when fitting runtime growth exponents."""

    # Public methods
    # ------------------------------------------------------------

    def feature_map(self, n: int) -> FeatureMapSpec:
        """
        Returns the feature map spec of the configured repetition count for `n` qubits.
        """
        return FeatureMapSpec(n, self.reps)

    def replace(self, **overrides: Any) -> "ExperimentConfig":
        """
        Returns a copy with the given fields replaced; `None` values are ignored.
        """
        changes = {key: value for key, value in overrides.items() if value is not None}
        return ExperimentConfig.from_dict({**self.to_dict(), **changes})

    def to_dict(self) -> Dict[str, Any]:
        """
        Returns the JSON compatible representation of the config.
        """
        result = dataclasses.asdict(self)
        result["qubits"] = list(self.qubits)
        result["scope"] = self.scope.value
        return result

    def validate(self) -> "ExperimentConfig":
        """
        Checks the config against the preconditions of every operation it drives.

        Returns:
            The config itself.
        """
        validate_qubit_list(self.qubits)
        if self.qubits[-1] > MAX_QUBITS:
            raise ArgumentError("At most {} qubits are supported, got {}.".format(MAX_QUBITS, self.qubits[-1]))
        if self.m < 2:
            raise ArgumentError("m must be at least 2, got {}.".format(self.m))
        if self.seed < 0:
            raise ArgumentError("The seed must be non-negative, got {}.".format(self.seed))
        if self.reps < 1:
            raise ArgumentError("reps must be at least 1, got {}.".format(self.reps))
        if not (math.isfinite(self.low) and math.isfinite(self.high) and self.low < self.high):
            raise ArgumentError("Invalid sampling interval [{}, {}).".format(self.low, self.high))
        for name in ("t_gate", "t_meas", "gamma"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ArgumentError("{} must be strictly positive, got {!r}.".format(name, value))
        if self.bench_repetitions < MIN_REPETITIONS:
            raise ArgumentError("bench_repetitions must be at least {}, got {}.".format(
                MIN_REPETITIONS, self.bench_repetitions))
        if self.workers < 1:
            raise ArgumentError("workers must be at least 1, got {}.".format(self.workers))
        return self

    # Class methods
    # ------------------------------------------------------------

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ExperimentConfig":
        """
        Creates a config from its JSON representation. Missing keys take their default value.
        """
        known = {f.name: f for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - set(known))
        if unknown:
            raise ArgumentError("Unknown config keys: {}.".format(", ".join(unknown)))

        values: Dict[str, Any] = {}
        try:
            for key, value in data.items():
                values[key] = _coerce(key, value)
        except (TypeError, ValueError) as e:
            raise ArgumentError("Invalid config value: {}".format(e)) from e
        return cls(**values)

    @classmethod
    def load(cls, path: Optional[str], env: Optional[Mapping[str, str]] = None) -> "ExperimentConfig":
        """
        Loads the config file at `path` (defaults if `None`) and applies the seed environment
        variable when the file does not set a seed.

        Arguments:
            path (Optional[str]): Path of a JSON config file.
            env (Optional[Mapping[str, str]]): The environment to read; `os.environ` if `None`.
        """
        data: Dict[str, Any] = {}
        if path is not None:
            try:
                with open(path, encoding="utf-8") as f:
                    data = json.load(f)
            except OSError as e:
                raise ArgumentError("Cannot read config file {}: {}".format(path, e.strerror)) from e
            except json.JSONDecodeError as e:
                raise ArgumentError("Config file {} is not valid JSON: {}".format(path, e)) from e
            if not isinstance(data, dict):
                raise ArgumentError("Config file {} must contain a JSON object.".format(path))

        env = os.environ if env is None else env
        if "seed" not in data and env.get(SEED_ENV_VAR):
            data = {**data, "seed": env[SEED_ENV_VAR]}
        return cls.from_dict(data)


# Functions
# ------------------------------------------------------------


def parse_qubits(text: str) -> Tuple[int, ...]:
    """
    Parses a qubit list such as `2,4,6` or a range `2-12` / `2-12:2` (inclusive, optional step).
    """
    text = text.strip()
    try:
        if "-" in text and "," not in text:
            bounds, _, step = text.partition(":")
            first, last = (int(part) for part in bounds.split("-"))
            return tuple(range(first, last + 1, int(step) if step else 1))
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise ArgumentError("Invalid qubit list {!r}.".format(text)) from e


def _coerce(key: str, value: Any) -> Any:
    """
    Converts a JSON value to the type of the config field `key`.
    """
    if key == "qubits":
        return parse_qubits(value) if isinstance(value, str) else tuple(int(q) for q in value)
    if key == "scope":
        return RuntimeScope(value)
    if key == "out":
        return str(value)
    if key == "include_dataset_time":
        if not isinstance(value, bool):
            raise TypeError("include_dataset_time must be a boolean, got {!r}".format(value))
        return value
    if key in ("m", "seed", "reps", "bench_repetitions", "workers", "growth_min_qubits"):
        if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
            raise TypeError("{} must be an integer, got {!r}".format(key, value))
        return int(value)
    return float(value)
