import math
from fractions import Fraction

import pytest

from fqst.dynamics import integrate_full
from fqst.errors import DomainError
from fqst.network import WaveguideSpec, build_linear, build_star
from fqst.planner import (
    FractionPlan,
    PlanKind,
    ScheduleTiming,
    assemble_schedule,
    bell_endpoint_fractions,
    even_site_w_fractions,
    sequential_w_fractions,
    star_w_fractions,
)

KAPPA = 2.0 * math.pi * 50e6
OMEGA = 2.0 * math.pi * 8.407e9
WG = WaveguideSpec(5.0, 100, OMEGA, KAPPA)


class TestSequentialW:
    def test_three_qubits(self):
        plan = sequential_w_fractions(3)
        assert plan.fractions == (Fraction(3, 2), Fraction(2))
        for m in plan.predicted_moduli:
            assert m == pytest.approx(1.0 / math.sqrt(3), abs=1e-15)

    def test_five_qubits(self):
        plan = sequential_w_fractions(5)
        assert plan.fractions == (
            Fraction(5, 4), Fraction(4, 3), Fraction(3, 2), Fraction(2),
        )

    def test_fractions_increase_to_two(self):
        plan = sequential_w_fractions(8)
        assert list(plan.fractions) == sorted(plan.fractions)
        assert plan.fractions[-1] == 2

    def test_residual_zero(self):
        assert sequential_w_fractions(6).residual == pytest.approx(0.0, abs=1e-12)

    def test_too_few_qubits(self):
        with pytest.raises(DomainError):
            sequential_w_fractions(1)


class TestBellEndpoint:
    def test_fractions(self):
        plan = bell_endpoint_fractions(4)
        assert plan.fractions == (Fraction(2), Fraction(1), Fraction(1))

    def test_moduli(self):
        plan = bell_endpoint_fractions(5)
        root_half = 1.0 / math.sqrt(2)
        assert plan.predicted_moduli[0] == pytest.approx(root_half, abs=1e-15)
        assert plan.predicted_moduli[-1] == pytest.approx(root_half, abs=1e-15)
        assert all(m == 0.0 for m in plan.predicted_moduli[1:-1])


class TestEvenSiteW:
    def test_four_qubits(self):
        plan = even_site_w_fractions(4)
        assert plan.fractions == (Fraction(1), Fraction(2), Fraction(1))
        expected = (0.0, 1.0 / math.sqrt(2), 0.0, 1.0 / math.sqrt(2))
        assert plan.predicted_moduli == pytest.approx(expected, abs=1e-15)

    def test_six_qubits(self):
        plan = even_site_w_fractions(6)
        assert plan.fractions == (
            Fraction(1), Fraction(3, 2), Fraction(1), Fraction(2), Fraction(1),
        )
        target = 1.0 / math.sqrt(3)
        for i, m in enumerate(plan.predicted_moduli):
            if i in (1, 3, 5):
                assert m == pytest.approx(target, abs=1e-15)
            else:
                assert m == 0.0

    def test_odd_count_rejected(self):
        with pytest.raises(DomainError):
            even_site_w_fractions(5)


class TestStarW:
    def test_receivers_only(self):
        plan = star_w_fractions(3)
        assert plan.fractions == (Fraction(3),) * 3
        assert plan.predicted_moduli[0] == pytest.approx(0.0, abs=1e-12)

    def test_including_emitter(self):
        plan = star_w_fractions(3, include_emitter=True)
        assert plan.fractions == (Fraction(4),) * 3
        assert plan.predicted_moduli == pytest.approx((0.5,) * 4, abs=1e-15)

    def test_oversubscribed_rejected(self):
        with pytest.raises(DomainError):
            FractionPlan(PlanKind.STAR, (Fraction(3, 2),) * 2, (0.0,))


class TestAssembledSchedules:
    def test_sequential_timing(self):
        spec = build_linear(3, WG)
        sched = assemble_schedule(sequential_w_fractions(3), spec)
        # control time 35/kappa plus one delay per hop
        t_d = 5.0 / WG.group_velocity
        assert sched.duration == pytest.approx(35.0 / KAPPA + 2 * t_d, rel=1e-9)
        assert len(sched.assignments) == 4

    def test_star_timing(self):
        spec = build_star(3, WG)
        sched = assemble_schedule(star_w_fractions(3), spec)
        t_d = 5.0 / WG.group_velocity
        assert sched.duration == pytest.approx(14.0 / KAPPA + t_d, rel=1e-9)
        assert len(sched.assignments) == 6

    def test_topology_mismatch(self):
        with pytest.raises(DomainError):
            assemble_schedule(sequential_w_fractions(3), build_star(2, WG))
        with pytest.raises(DomainError):
            assemble_schedule(star_w_fractions(2), build_linear(3, WG))

    def test_hop_count_mismatch(self):
        with pytest.raises(DomainError):
            assemble_schedule(sequential_w_fractions(4), build_linear(3, WG))

    def test_linear_w3_execution(self):
        spec = build_linear(3, WG)
        sched = assemble_schedule(sequential_w_fractions(3), spec)
        final = integrate_full(spec, sched).final_state()
        target = 1.0 / math.sqrt(3)
        for q in spec.qubit_labels:
            assert abs(final.amplitude(q)) == pytest.approx(target, abs=2e-3)

    def test_star_w3_execution(self):
        spec = build_star(3, WG)
        sched = assemble_schedule(star_w_fractions(3), spec)
        final = integrate_full(spec, sched).final_state()
        target = 1.0 / math.sqrt(3)
        for q in spec.qubit_labels[1:]:
            assert abs(final.amplitude(q)) == pytest.approx(target, abs=1e-3)
        assert abs(final.amplitude(spec.qubit_labels[0])) < 5e-3

    def test_bell_endpoint_execution(self):
        spec = build_linear(3, WG)
        sched = assemble_schedule(bell_endpoint_fractions(3), spec)
        final = integrate_full(spec, sched).final_state()
        root_half = 1.0 / math.sqrt(2)
        assert abs(final.amplitude("q1")) == pytest.approx(root_half, abs=2e-3)
        assert abs(final.amplitude("q3")) == pytest.approx(root_half, abs=2e-3)
        assert abs(final.amplitude("q2")) < 2e-3

    def test_custom_control_time(self):
        spec = build_linear(2, WG)
        timing = ScheduleTiming(control_time=24.0 / KAPPA, samples=513)
        sched = assemble_schedule(bell_endpoint_fractions(2), spec, timing)
        t_d = 5.0 / WG.group_velocity
        assert sched.duration == pytest.approx(24.0 / KAPPA + t_d, rel=1e-9)
        assert sched.assignments[0][1].times.size == 513
