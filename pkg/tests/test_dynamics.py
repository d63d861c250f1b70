import math

import numpy as np
import pytest

from fqst.dynamics import (
    ExcitationState,
    Schedule,
    cascaded_transfer,
    integrate_full,
    integrate_reduced_emitter,
    integrate_reduced_star,
    interpolate_control,
    two_node_transfer,
)
from fqst.errors import DomainError, IntegrationError
from fqst.network import WaveguideSpec, build_linear
from fqst.pulses import (
    ControlKind,
    ControlSamples,
    PhotonShape,
    PulseSpec,
    ShapeKind,
    sample_control,
    sech_coupling,
    sech_decay_rate,
)

KAPPA = 2.0 * math.pi * 50e6
OMEGA = 2.0 * math.pi * 8.407e9


def _samples(n=1.0, kappa=1.0, points=801):
    spec = PulseSpec(PhotonShape(ShapeKind.SECH, kappa, n))
    return sample_control(spec, n_samples=points)


class TestSchedule:
    def test_overlap_rejected(self):
        a = _samples()
        with pytest.raises(DomainError):
            Schedule((("c1", a), ("c1", a)), duration=100.0)

    def test_disjoint_reuse_allowed(self):
        a = _samples()
        shifted = ControlSamples(a.times + 2.0 * (a.times[-1] - a.times[0]),
                                 a.values)
        sched = Schedule((("c1", a), ("c1", shifted)),
                         duration=float(shifted.times[-1]))
        assert len(sched.assignments) == 2

    def test_duration_must_cover_controls(self):
        a = _samples()
        with pytest.raises(DomainError):
            Schedule((("c1", a),), duration=0.0)

    def test_start(self):
        a = _samples()
        sched = Schedule((("c1", a),), duration=float(a.times[-1]))
        assert sched.start == float(a.times[0])


class TestInterpolateControl:
    def test_matches_samples(self):
        a = _samples(2.0, KAPPA)
        fn = interpolate_control(a)
        mid = 0.5 * (a.times[3] + a.times[4])
        exact = sech_coupling(np.array([mid]), 2.0, KAPPA)[0]
        assert fn(mid) == pytest.approx(exact, rel=1e-6)

    def test_zero_outside_window(self):
        a = _samples()
        fn = interpolate_control(a)
        assert fn(a.times[0] - 1.0) == 0.0
        assert fn(a.times[-1] + 1.0) == 0.0
        vec = fn(np.array([a.times[0] - 1.0, a.times[len(a.times) // 2]]))
        assert vec[0] == 0.0 and vec[1] != 0.0


class TestReducedEmitter:
    # residual |q|^2 after emission is exactly (n-1)/n for each family
    @pytest.mark.parametrize("n", [1.0, 1.5, 2.0, 10.0])
    def test_sech_residual(self, n):
        shape = PhotonShape(ShapeKind.SECH, 1.0, n)
        res = integrate_reduced_emitter(
            lambda t: sech_coupling(t, n, 1.0), kappa=1.0,
            window=shape.window(1e-10))
        assert res.residual_population == pytest.approx((n - 1.0) / n, abs=1e-8)
        assert res.emitted_probability == pytest.approx(1.0 / n, abs=1e-8)

    def test_direct_decay_node(self):
        res = integrate_reduced_emitter(
            lambda t: sech_decay_rate(t, 2.0, 1.0), kappa=1.0,
            kind=ControlKind.QUBIT_DECAY_RATE, window=(-30.0, 30.0))
        assert res.resonator is None
        assert res.residual_population == pytest.approx(0.5, abs=1e-8)

    def test_flux_matches_emitted_mass(self):
        shape = PhotonShape(ShapeKind.SECH, 1.0, 2.0)
        res = integrate_reduced_emitter(
            lambda t: sech_coupling(t, 2.0, 1.0), kappa=1.0,
            window=shape.window(1e-10))
        assert res.emitted_fraction == pytest.approx(0.5, abs=1e-6)

    def test_norm_conservation(self):
        res = integrate_reduced_emitter(
            lambda t: sech_coupling(t, 3.0, 1.0), kappa=1.0,
            window=(-25.0, 25.0))
        total = (np.abs(res.qubit[-1]) ** 2 + np.abs(res.resonator[-1]) ** 2
                 + res.emitted_fraction)
        assert total == pytest.approx(1.0, abs=1e-6)


class TestCascade:
    def test_full_transfer(self):
        # n = 1 emission into the time-reversed absorber moves everything
        emit, recv = cascaded_transfer(
            lambda t: sech_coupling(t, 1.0, 1.0),
            lambda t: sech_coupling(-t, 1.0, 1.0),
            1.0, 1.0, t_d=0.0, window=(-25.0, 25.0))
        assert np.abs(recv.qubit[-1]) ** 2 == pytest.approx(1.0, abs=1e-8)

    def test_half_transfer(self):
        emit, recv = cascaded_transfer(
            lambda t: sech_coupling(t, 2.0, 1.0),
            lambda t: sech_coupling(-t, 1.0, 1.0),
            1.0, 1.0, t_d=0.0, window=(-25.0, 25.0))
        assert np.abs(emit.qubit[-1]) ** 2 == pytest.approx(0.5, abs=1e-8)
        assert np.abs(recv.qubit[-1]) ** 2 == pytest.approx(0.5, abs=1e-7)

    def test_delay_only_shifts(self):
        # a delayed link needs the absorber delayed by the same t_d
        window = (-25.0, 25.0)
        t_d = 3.0
        _, r0 = cascaded_transfer(
            lambda t: sech_coupling(t, 2.0, 1.0),
            lambda t: sech_coupling(-t, 1.0, 1.0),
            1.0, 1.0, t_d=0.0, window=window)
        _, r1 = cascaded_transfer(
            lambda t: sech_coupling(t, 2.0, 1.0),
            lambda t: sech_coupling(-(t - t_d), 1.0, 1.0),
            1.0, 1.0, t_d=t_d, window=window)
        assert np.abs(r1.qubit[-1]) == pytest.approx(np.abs(r0.qubit[-1]),
                                                     abs=1e-7)


class TestReducedStar:
    def test_three_equal_channels(self):
        from fqst.pulses import simultaneous_couplings

        channels = [(1.0, 3.0, 0.0)] * 3
        window = (-20.0, 20.0)
        t = np.linspace(*window, 4001)
        gs = simultaneous_couplings(t, channels)
        controls = [ControlSamples(t, g) for g in gs]
        _, q_e, results = integrate_reduced_star(channels, controls, window)
        assert np.abs(q_e[-1]) ** 2 == pytest.approx(0.0, abs=1e-10)
        for r in results:
            assert r.emitted_fraction == pytest.approx(1.0 / 3.0, abs=1e-6)

    def test_partial_release(self):
        from fqst.pulses import simultaneous_couplings

        channels = [(1.0, 4.0, 0.0), (1.0, 4.0, 0.0)]
        window = (-20.0, 20.0)
        t = np.linspace(*window, 4001)
        gs = simultaneous_couplings(t, channels)
        controls = [ControlSamples(t, g) for g in gs]
        _, q_e, _results = integrate_reduced_star(channels, controls, window)
        assert np.abs(q_e[-1]) ** 2 == pytest.approx(0.5, abs=1e-6)


class TestTwoNodeTransfer:
    def test_reduced_map(self):
        alpha, beta = 0.6, 0.8
        out = two_node_transfer(alpha, beta, 2.0, 1.0)
        assert abs(out[0]) == pytest.approx(alpha, abs=1e-12)
        assert abs(out[1]) == pytest.approx(beta / math.sqrt(2), abs=1e-6)
        assert abs(out[2]) == pytest.approx(beta / math.sqrt(2), abs=1e-6)

    def test_unnormalized_rejected(self):
        with pytest.raises(DomainError):
            two_node_transfer(1.0, 1.0, 2.0, 1.0)


@pytest.fixture(scope="module")
def two_node():
    wg = WaveguideSpec(5.0, 100, OMEGA, KAPPA)
    return build_linear(2, wg)


class TestFullModel:
    def _schedule(self, spec, n=1.0):
        t_d = 5.0 / spec.links[0][0].group_velocity
        half = 12.0 / KAPPA
        t = np.linspace(-half, half, 1201)
        emit = ControlSamples(t, sech_coupling(t, n, KAPPA))
        absorb = ControlSamples(t + t_d, sech_coupling(-t, 1.0, KAPPA))
        return Schedule(((spec.links[0][1], emit), (spec.links[0][2], absorb)),
                        duration=float(t[-1] + t_d) - float(t[0]),
                        t_s=float(-t[0]))

    def test_transfer_efficiency(self, two_node):
        sched = self._schedule(two_node)
        t0 = sched.start
        res = integrate_full(two_node, sched,
                             t_span=(t0, t0 + sched.duration))
        final = res.final_state()
        assert final.population("q2") > 0.999

    def test_linearity_in_initial_state(self, two_node):
        sched = self._schedule(two_node, n=2.0)
        t0 = sched.start
        span = (t0, t0 + sched.duration)
        r1 = integrate_full(two_node, sched, t_span=span).final_state()
        init = ExcitationState.single_excitation(two_node, "q1")
        scaled = ExcitationState(0.5j * init.amplitudes, init.index_map)
        r2 = integrate_full(two_node, sched, initial=scaled,
                            t_span=span).final_state()
        np.testing.assert_allclose(r2.amplitudes, 0.5j * r1.amplitudes,
                                   atol=1e-9)

    def test_noise_columns_match_serial_runs(self, two_node):
        sched = self._schedule(two_node)
        t0 = sched.start
        span = (t0, t0 + sched.duration)
        shifts = np.array([[0.0, 0.002 * KAPPA], [0.0, -0.001 * KAPPA]])
        batched = integrate_full(two_node, sched, noise_shifts=shifts,
                                 t_span=span)
        solo = integrate_full(two_node, sched, noise_shifts=shifts[:, 1:],
                              t_span=span)
        np.testing.assert_allclose(batched.states[-1][:, 1],
                                   solo.states[-1][:, 0], atol=1e-9)

    def test_dwell_accumulates(self, two_node):
        sched = self._schedule(two_node)
        t0 = sched.start
        res = integrate_full(two_node, sched,
                             t_span=(t0, t0 + sched.duration))
        dwell = res.final_dwell()
        # the sender dwells for roughly the pulse duration scale 1/kappa
        assert dwell["q1"] > 0.5 / KAPPA
        assert dwell["q2"] > 0.0

    def test_norm_drift_guard(self, two_node):
        sched = self._schedule(two_node)
        t0 = sched.start
        with pytest.raises(IntegrationError):
            integrate_full(two_node, sched, tol=1e-2,
                           t_span=(t0, t0 + sched.duration))
