import math

import numpy as np
import pytest

from fqst.errors import DomainError
from fqst.noise import (
    NoiseSpec,
    ReducedDensityMatrix,
    bootstrap,
    ensemble_density_matrix,
    relaxation_factors,
    sample_dephasing,
)


class TestNoiseSpec:
    def test_sigma(self):
        spec = NoiseSpec(t2=20e-6)
        assert spec.sigma == pytest.approx(math.sqrt(2.0) / 20e-6, rel=1e-15)

    def test_infinite_t2_disables_dephasing(self):
        assert NoiseSpec().sigma == 0.0

    def test_invalid_parameters(self):
        with pytest.raises(DomainError):
            NoiseSpec(t1=0.0)
        with pytest.raises(DomainError):
            NoiseSpec(t2=-1.0)
        with pytest.raises(DomainError):
            NoiseSpec(realizations=0)


class TestSampleDephasing:
    def test_shape_and_scale(self):
        spec = NoiseSpec(t2=10e-6, realizations=4000, seed=7)
        shifts = sample_dephasing(spec, 3)
        assert shifts.shape == (3, 4000)
        assert np.std(shifts) == pytest.approx(spec.sigma, rel=0.05)
        assert abs(np.mean(shifts)) < 0.05 * spec.sigma

    def test_deterministic(self):
        spec = NoiseSpec(t2=10e-6, realizations=16, seed=3)
        np.testing.assert_array_equal(sample_dephasing(spec, 2),
                                      sample_dephasing(spec, 2))

    def test_prefix_stability(self):
        # growing the ensemble must not change earlier realizations
        small = sample_dephasing(NoiseSpec(t2=5e-6, realizations=8, seed=1), 2)
        large = sample_dephasing(NoiseSpec(t2=5e-6, realizations=32, seed=1), 2)
        np.testing.assert_array_equal(large[:, :8], small)

    def test_noiseless(self):
        shifts = sample_dephasing(NoiseSpec(realizations=5), 2)
        assert not shifts.any()


class TestRelaxationFactors:
    def test_closed_form(self):
        assert relaxation_factors(3e-6, 6e-6) == pytest.approx(
            math.exp(-0.25), rel=1e-15)

    def test_population_decay(self):
        # a fully dwelling qubit loses population as exp(-tau/T1)
        tau, t1 = 2e-6, 7e-6
        amp = relaxation_factors(tau, t1)
        assert amp ** 2 == pytest.approx(math.exp(-tau / t1), rel=1e-12)

    def test_infinite_t1(self):
        np.testing.assert_array_equal(
            relaxation_factors(np.array([1.0, 2.0]), math.inf), [1.0, 1.0])


class TestReducedDensityMatrix:
    def test_rejects_nonhermitian(self):
        m = np.eye(3, dtype=complex)
        m[0, 1] = 0.5
        with pytest.raises(DomainError):
            ReducedDensityMatrix(("vac", "q1", "q2"), m)

    def test_rejects_bad_trace(self):
        with pytest.raises(DomainError):
            ReducedDensityMatrix(("vac", "q1"), 2.0 * np.eye(2))

    def test_populations(self):
        m = np.diag([0.2, 0.5, 0.3]).astype(complex)
        rho = ReducedDensityMatrix(("vac", "q1", "q2"), m)
        assert rho.qubit_populations() == {"q1": 0.5, "q2": 0.3}
        assert rho.n_qubits == 2


class TestEnsembleDensityMatrix:
    def test_pure_noiseless(self):
        amps = (np.ones((3, 1), dtype=complex) / math.sqrt(3))
        spec = NoiseSpec(realizations=1)
        rho = ensemble_density_matrix(amps, np.zeros((3, 1)), spec)
        np.testing.assert_allclose(rho.matrix[1:, 1:], np.full((3, 3), 1 / 3),
                                   atol=1e-15)
        assert rho.matrix[0, 0] == pytest.approx(0.0, abs=1e-15)

    def test_relaxation_moves_weight_to_vacuum(self):
        t1 = 10e-6
        tau = 4e-6
        amps = np.array([[1.0]], dtype=complex)
        rho = ensemble_density_matrix(
            amps, np.array([[tau]]), NoiseSpec(t1=t1, realizations=1))
        assert rho.matrix[1, 1].real == pytest.approx(math.exp(-tau / t1),
                                                      rel=1e-12)
        assert rho.matrix[0, 0].real == pytest.approx(
            1.0 - math.exp(-tau / t1), rel=1e-12)

    def test_dephasing_shrinks_coherences(self):
        rng = np.random.default_rng(0)
        phases = rng.uniform(0.0, 2.0 * math.pi, 500)
        amps = np.stack([np.exp(1j * phases), np.ones(500, dtype=complex)])
        amps /= math.sqrt(2.0)
        rho = ensemble_density_matrix(amps, np.zeros((2, 500)),
                                      NoiseSpec(realizations=500))
        assert abs(rho.matrix[1, 2]) < 0.05
        assert rho.matrix[1, 1].real == pytest.approx(0.5, abs=1e-12)

    def test_leakage_goes_to_vacuum(self):
        amps = np.array([[0.6], [0.0]], dtype=complex)  # 0.64 left the qubits
        rho = ensemble_density_matrix(amps, np.zeros((2, 1)),
                                      NoiseSpec(realizations=1))
        assert rho.matrix[0, 0].real == pytest.approx(0.64, rel=1e-12)

    def test_realization_count_enforced(self):
        with pytest.raises(DomainError):
            ensemble_density_matrix(np.ones((2, 3), dtype=complex) / 2.0,
                                    np.zeros((2, 3)),
                                    NoiseSpec(realizations=4))


class TestBootstrap:
    def test_mean_and_scale(self):
        rng = np.random.default_rng(5)
        values = rng.binomial(1, 0.3, 2000).astype(float)
        mean, std = bootstrap(values, 400, seed=9)
        assert mean == pytest.approx(values.mean(), abs=1e-15)
        expected = math.sqrt(values.var() / values.size)
        assert std == pytest.approx(expected, rel=0.15)

    def test_deterministic(self):
        values = np.arange(50, dtype=float)
        assert bootstrap(values, 100, seed=2) == bootstrap(values, 100, seed=2)

    def test_needs_data(self):
        with pytest.raises(DomainError):
            bootstrap(np.array([1.0]), 10, seed=0)
