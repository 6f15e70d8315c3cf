import math

import numpy as np
import pytest

from qkonc.errors import ArgumentError, DomainError
from qkonc.fitting import ExpFit
from qkonc.kernel import ConcentrationPoint
from qkonc.runtime import (RuntimeCurve, RuntimeParams, RuntimeRecord, RuntimeScope, circuit_time, fit_concentration,
                           fit_growth, pair_count, quantum_runtime, runtime_comparison,
                           scheduled_shots)
from qkonc.shots import ShotPlan, required_shots
from qkonc.simulation.featuremap import FeatureMapSpec

DEFAULTS = RuntimeParams()
PLAN = ShotPlan(10.0, ExpFit(0.5, 0.3, 1.0), ExpFit(0.2, 0.35, 1.0))


def _record(n: int, t_quantum: float, t_classical: float) -> RuntimeRecord:
    return RuntimeRecord(n=n, layers=0, shots=1.0, shots_per_entry=1.0, t_circ=1.0, t_quantum=t_quantum,
                         t_classical=t_classical, scope=RuntimeScope.FULL_GRAM)


class TestRuntimeParams:
    def test_defaults(self):
        assert (DEFAULTS.t_g, DEFAULTS.t_m, DEFAULTS.gamma) == (1e-8, 1e-7, 10.0)

    @pytest.mark.parametrize("values", [(-1e-8, 1e-7, 10), (1e-8, 0, 10), (1e-8, 1e-7, 0), (math.nan, 1e-7, 10)])
    def test_invalid(self, values):
        with pytest.raises(ArgumentError):
            RuntimeParams(*values)


class TestCircuitTime:
    def test_default_constants(self):
        assert circuit_time(1, DEFAULTS) == pytest.approx(1.4e-7, rel=1e-15)
        assert circuit_time(5, DEFAULTS) == pytest.approx(3.8e-7, rel=1e-15)

    def test_affine_step(self):
        for n in range(1, 40):
            step = circuit_time(n + 1, DEFAULTS) - circuit_time(n, DEFAULTS)
            assert step > 0
            assert step == pytest.approx(6e-8, rel=1e-12)

    def test_zero_gate_time(self):
        params = RuntimeParams(t_g=0.0, t_m=2.5e-7)
        assert all(circuit_time(n, params) == 2.5e-7 for n in range(1, 10))

    def test_invalid_qubit_count(self):
        with pytest.raises(ArgumentError):
            circuit_time(0, DEFAULTS)


class TestQuantumRuntime:
    def test_worked_example(self):
        value = quantum_runtime(5, DEFAULTS, PLAN, RuntimeScope.PER_ENTRY)
        assert value == required_shots(5, PLAN) * circuit_time(5, DEFAULTS)
        assert value == pytest.approx(3.118e-3, rel=1e-3)

    def test_single_shot_plan(self):
        base = required_shots(4, ShotPlan(1.0, PLAN.mu_fit, PLAN.sigma_fit))
        plan = ShotPlan(1 / math.sqrt(base), PLAN.mu_fit, PLAN.sigma_fit)
        assert required_shots(4, plan) == pytest.approx(1.0, rel=1e-14)
        assert quantum_runtime(4, DEFAULTS, plan) == pytest.approx(circuit_time(4, DEFAULTS), rel=1e-14)

    def test_doubled_shots_double_runtime(self):
        # gamma * sqrt(2) doubles R up to rounding; gamma * 2 quadruples it exactly.
        plan = ShotPlan(20.0, PLAN.mu_fit, PLAN.sigma_fit)
        for n in range(1, 12):
            assert quantum_runtime(n, DEFAULTS, plan) == 4 * quantum_runtime(n, DEFAULTS, PLAN)
            scaled = ShotPlan(10.0 * math.sqrt(2), PLAN.mu_fit, PLAN.sigma_fit)
            assert quantum_runtime(n, DEFAULTS, scaled) == pytest.approx(2 * quantum_runtime(n, DEFAULTS, PLAN),
                                                                         rel=1e-14)

    @pytest.mark.parametrize("m", [2, 10, 100])
    def test_full_gram_scaling(self, m):
        per_entry = quantum_runtime(6, DEFAULTS, PLAN, RuntimeScope.PER_ENTRY, m)
        full = quantum_runtime(6, DEFAULTS, PLAN, RuntimeScope.FULL_GRAM, m)
        assert full / per_entry == pytest.approx(m * (m - 1) / 2, rel=1e-14)

    def test_scope_strings(self):
        assert quantum_runtime(3, DEFAULTS, PLAN, "full-gram", 100) == quantum_runtime(
            3, DEFAULTS, PLAN, RuntimeScope.FULL_GRAM, 100)
        with pytest.raises(ValueError):
            quantum_runtime(3, DEFAULTS, PLAN, "everything", 100)

    def test_full_gram_needs_two_points(self):
        with pytest.raises(ArgumentError):
            quantum_runtime(3, DEFAULTS, PLAN, RuntimeScope.FULL_GRAM, 1)

    def test_invalid_plan_propagates(self):
        plan = ShotPlan(10.0, ExpFit(3.0, 0.1, 1.0), PLAN.sigma_fit)
        with pytest.raises(DomainError):
            quantum_runtime(1, DEFAULTS, plan)

    def test_asymptotic_log_slope(self):
        expected = 2 * PLAN.sigma_fit.alpha - PLAN.mu_fit.alpha
        for n in range(60, 80):
            assert 1 - PLAN.modeled_mean(n) > 0.99
            slope = math.log(quantum_runtime(n + 1, DEFAULTS, PLAN)) - math.log(quantum_runtime(n, DEFAULTS, PLAN))
            assert slope == pytest.approx(expected, rel=0.05)

    @pytest.mark.parametrize("scope", list(RuntimeScope))
    def test_runtime_is_scheduled_shots_times_circuit_time(self, scope):
        for n in range(1, 12):
            runs = scheduled_shots(n, PLAN, scope, 100)
            assert runs == required_shots(n, PLAN) * scope.entry_count(100)
            assert quantum_runtime(n, DEFAULTS, PLAN, scope, 100) == runs * circuit_time(n, DEFAULTS)

    def test_scheduled_shots_full_gram_needs_two_points(self):
        with pytest.raises(ArgumentError):
            scheduled_shots(3, PLAN, RuntimeScope.FULL_GRAM, 1)

    def test_pair_count(self):
        assert [pair_count(m) for m in (1, 2, 3, 100)] == [0, 1, 3, 4950]
        assert RuntimeScope.PER_ENTRY.entry_count(100) == 1
        assert RuntimeScope.FULL_GRAM.entry_count(100) == 4950


class TestFits:
    def test_fit_concentration(self):
        points = [ConcentrationPoint(n, 0.9 * math.exp(-0.4 * n), 0.3 * math.exp(-0.5 * n), 10, n)
                  for n in (2, 4, 6)]
        mu_fit, sigma_fit = fit_concentration(points)
        assert (mu_fit.C, mu_fit.alpha) == pytest.approx((0.9, 0.4), rel=1e-9)
        assert (sigma_fit.C, sigma_fit.alpha) == pytest.approx((0.3, 0.5), rel=1e-9)

    def test_growth_uses_large_qubit_counts(self):
        records = [_record(n, 5.0, 1e-3 * math.exp(0.7 * n) if n >= 10 else 1.0) for n in range(2, 15, 2)]
        fit = fit_growth(records, lambda r: r.t_classical, min_qubits=10)
        assert -fit.alpha == pytest.approx(0.7, rel=1e-9)

    def test_growth_falls_back_to_all_records(self):
        records = [_record(n, math.exp(0.2 * n), 1.0) for n in (2, 4, 12)]
        fit = fit_growth(records, lambda r: r.t_quantum, min_qubits=10)
        assert -fit.alpha == pytest.approx(0.2, rel=1e-9)

    def test_growth_fit_failure(self):
        records = [_record(n, 0.0, 1.0) for n in (2, 4)]
        assert fit_growth(records, lambda r: r.t_quantum, 10) is None

    def test_advantage_qubits(self):
        curve = RuntimeCurve(RuntimeScope.FULL_GRAM, 10, PLAN.mu_fit, PLAN.sigma_fit,
                             records=[_record(2, 5.0, 1.0), _record(4, 1.0, 2.0), _record(6, 3.0, 3.0)])
        assert curve.advantage_qubits == [4]


class TestRuntimeComparison:
    def _compare(self, **kwargs):
        arguments = dict(qubit_list=[2, 3, 4], m=6, params=DEFAULTS, spec=FeatureMapSpec(2), seed=11)
        arguments.update(kwargs)
        return runtime_comparison(**arguments)

    def test_internal_identities(self):
        curve = self._compare()
        assert [r.n for r in curve.records] == [2, 3, 4]
        assert len(curve.points) == 3 and len(curve.benchmarks) == 3
        for record in curve.records:
            assert record.scope is RuntimeScope.FULL_GRAM
            assert record.t_circ == pytest.approx(record.layers * DEFAULTS.t_g + DEFAULTS.t_m, rel=1e-15)
            assert record.t_quantum == pytest.approx(record.shots * record.t_circ, rel=1e-12)
            assert record.shots == pytest.approx(record.shots_per_entry * pair_count(6), rel=1e-15)
            assert record.t_classical > 0
        assert curve.quantum_growth is not None and curve.classical_growth is not None

    def test_modeled_quantities_are_deterministic(self):
        first, second = self._compare(), self._compare()
        assert [r.t_quantum for r in first.records] == [r.t_quantum for r in second.records]
        assert first.mu_fit == second.mu_fit and first.sigma_fit == second.sigma_fit

    def test_gamma_scaling(self):
        base = self._compare()
        scaled = self._compare(params=RuntimeParams(gamma=20.0))
        for a, b in zip(base.records, scaled.records):
            assert b.t_quantum == 4 * a.t_quantum
            assert b.shots == 4 * a.shots
            assert b.shots_per_entry == 4 * a.shots_per_entry

    def test_scope_ratio(self):
        full = self._compare()
        per_entry = self._compare(scope=RuntimeScope.PER_ENTRY)
        for a, b in zip(full.records, per_entry.records):
            assert a.t_quantum / b.t_quantum == pytest.approx(15, rel=1e-12)
            assert b.scope is RuntimeScope.PER_ENTRY
            assert b.shots == b.shots_per_entry
            assert b.t_quantum == pytest.approx(b.shots * b.t_circ, rel=1e-12)
            assert a.shots_per_entry == b.shots_per_entry

    def test_records_are_reported_progressively(self):
        seen = []
        curve = self._compare(on_record=seen.append)
        assert seen == curve.records

    def test_low_r_squared_is_flagged(self):
        curve = self._compare()
        expected = sum(fit.r_squared < 0.5 for fit in (curve.mu_fit, curve.sigma_fit))
        assert sum("decay fit" in warning for warning in curve.warnings) == expected

    def test_needs_two_qubit_counts(self):
        with pytest.raises(ArgumentError):
            self._compare(qubit_list=[3])

    def test_unsorted_qubit_list(self):
        with pytest.raises(ArgumentError):
            self._compare(qubit_list=[4, 2])

    @pytest.mark.slow
    def test_classical_runtime_grows_past_ten_qubits(self):
        curve = runtime_comparison(list(range(2, 17, 2)), 100, DEFAULTS, FeatureMapSpec(2), 42)
        classical = {r.n: r.t_classical for r in curve.records}
        differences = [math.log(classical[n + 2]) - math.log(classical[n]) for n in (10, 12, 14)]
        assert all(d > 0 for d in differences)
        assert differences[0] < differences[1] < differences[2]
        assert curve.quantum_growth is not None and curve.classical_growth is not None
        assert np.isfinite(curve.quantum_growth.alpha) and np.isfinite(curve.classical_growth.alpha)
