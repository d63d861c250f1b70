"""Quasistatic dephasing ensembles, post-hoc relaxation, and ensemble
statistics.

Dephasing is modeled as a random but constant shift of each qubit
frequency per realization, Gaussian with sigma = sqrt(2)/T2.  Relaxation
is applied after the coherent dynamics: each qubit's amplitude shrinks by
exp(-tau_i/(2 T1)) where tau_i is its integrated excited-state population
(dwell time), and the lost probability moves to the vacuum diagonal.

Realization r draws from its own counter-based stream seeded by
(seed, r), so any realization is reproducible in isolation and ensembles
parallelize deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.random import PCG64, Generator, SeedSequence

from .errors import DomainError

__all__ = [
    "NoiseSpec",
    "ReducedDensityMatrix",
    "sample_dephasing",
    "relaxation_factors",
    "ensemble_density_matrix",
    "bootstrap",
]

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = 1e-10


@dataclass(frozen=True)
class NoiseSpec:
    """T1/T2 noise parameters and ensemble bookkeeping.

    ``math.inf`` for T1 or T2 disables the corresponding channel.
    """

    t1: float = math.inf
    t2: float = math.inf
    realizations: int = 1
    seed: int = 0
    bootstrap_resamples: int = 200

    def __post_init__(self):
        if self.t1 <= 0.0:
            raise DomainError(f"T1 must be positive, got {self.t1}")
        if self.t2 <= 0.0:
            raise DomainError(f"T2 must be positive, got {self.t2}")
        if self.realizations < 1:
            raise DomainError(f"need at least 1 realization, got {self.realizations}")

    @property
    def sigma(self):
        """Standard deviation of the quasistatic frequency shifts."""
        return 0.0 if math.isinf(self.t2) else math.sqrt(2.0) / self.t2


def realization_rng(seed, realization):
    """Independent deterministic stream for one realization."""
    return Generator(PCG64(SeedSequence((seed, realization))))


def sample_dephasing(spec, n_qubits):
    """Per-qubit quasistatic frequency shifts, shape (n_qubits, realizations).

    Column r is drawn from the (seed, r) stream, so subsets of realizations
    reproduce the same columns.
    """
    if n_qubits < 1:
        raise DomainError(f"need at least one qubit, got {n_qubits}")
    sigma = spec.sigma
    out = np.zeros((n_qubits, spec.realizations))
    if sigma == 0.0:
        return out
    for r in range(spec.realizations):
        out[:, r] = realization_rng(spec.seed, r).normal(0.0, sigma, n_qubits)
    return out


def relaxation_factors(dwell, t1):
    """Amplitude damping factors exp(-tau_i / (2 T1)) for per-qubit dwell
    times ``dwell`` (any shape)."""
    if t1 <= 0.0:
        raise DomainError(f"T1 must be positive, got {t1}")
    if math.isinf(t1):
        return np.ones_like(np.asarray(dwell, dtype=float))
    return np.exp(-np.asarray(dwell, dtype=float) / (2.0 * t1))


@dataclass(frozen=True)
class ReducedDensityMatrix:
    """Qubit-sector density matrix on the basis (vacuum, one excitation on
    each qubit), with everything else traced out."""

    basis: tuple
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        dim = len(self.basis)
        if m.shape != (dim, dim):
            raise DomainError("matrix shape does not match the basis")
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise DomainError("density matrix is not Hermitian")
        if abs(np.trace(m).real - 1.0) > TRACE_TOL:
            raise DomainError(f"trace is {np.trace(m).real}, expected 1")
        if np.min(np.linalg.eigvalsh(m)) < -PSD_TOL:
            raise DomainError("density matrix is not positive semidefinite")

    @property
    def n_qubits(self):
        return len(self.basis) - 1

    def qubit_populations(self):
        return {label: float(self.matrix[i, i].real)
                for i, label in enumerate(self.basis) if i > 0}


def ensemble_density_matrix(qubit_amplitudes, dwell, spec, labels=None):
    """Average the noise ensemble into a reduced density matrix.

    ``qubit_amplitudes``: (n_qubits, R) final qubit amplitudes per
    realization; ``dwell``: matching dwell times tau_i.  Each realization
    contributes the projector onto its relaxed state: amplitudes damped by
    exp(-tau_i/(2 T1)), the lost probability (plus any probability already
    outside the qubits) placed on the vacuum diagonal.  The mean over the
    fixed realization order is bit-reproducible.
    """
    q = np.asarray(qubit_amplitudes, dtype=complex)
    if q.ndim != 2:
        raise DomainError("qubit amplitudes must be a (n_qubits, R) array")
    nq, n_real = q.shape
    if n_real != spec.realizations:
        raise DomainError("column count must match the realization count")
    damped = q * relaxation_factors(np.asarray(dwell, dtype=float), spec.t1)
    dim = nq + 1
    rho = np.zeros((dim, dim), dtype=complex)
    # mean of per-realization projectors, accumulated in fixed order
    rho[1:, 1:] = (damped @ damped.conj().T) / n_real
    vac = 1.0 - np.sum(np.abs(damped) ** 2, axis=0)
    rho[0, 0] = np.sum(vac) / n_real
    if labels is None:
        labels = tuple(f"q{i}" for i in range(1, nq + 1))
    return ReducedDensityMatrix(("vac",) + tuple(labels), rho)


def bootstrap(values, resamples, seed):
    """Resampling-with-replacement estimate of (mean, std) of the mean of
    ``values``.  Deterministic under ``seed``."""
    values = np.asarray(values, dtype=float)
    if values.size < 2:
        raise DomainError("bootstrap needs at least 2 values")
    if resamples < 1:
        raise DomainError("need at least 1 resample")
    rng = Generator(PCG64(SeedSequence((seed, 0x626F6F74))))
    idx = rng.integers(0, values.size, size=(resamples, values.size))
    means = values[idx].mean(axis=1)
    return float(values.mean()), float(means.std(ddof=0))
