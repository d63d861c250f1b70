"""W-state targets, phase-optimized fidelity, and entanglement of
formation for three qubits.

Mixed-state entanglement of formation is estimated by the convex-roof
construction: minimize the ensemble-averaged pure-state value over
parametrized decompositions of the density matrix.  The result is an
upper bound; the spectral decomposition is always a candidate, so the
bound never exceeds the spectral-ensemble average.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.random import PCG64, Generator, SeedSequence
from scipy.optimize import minimize

from .errors import DomainError
from .noise import ReducedDensityMatrix

__all__ = [
    "W3_E3F",
    "w_state",
    "w_state_density",
    "fidelity_phase_optimized",
    "fidelity_witness",
    "e3f_pure",
    "e3f_mixed",
]

#: Entanglement of formation of the ideal three-qubit W state, in bits.
W3_E3F = math.log2(3) - 2.0 / 3.0


def w_state(n=3, phases=None):
    """Amplitudes of |W_n> on the (vacuum, single-excitation) basis."""
    if n < 2:
        raise DomainError(f"a W state needs at least 2 qubits, got {n}")
    amp = np.zeros(n + 1, dtype=complex)
    amp[1:] = 1.0 / math.sqrt(n)
    if phases is not None:
        amp[1:] *= np.exp(1j * np.asarray(phases, dtype=float))
    return amp


def w_state_density(n=3, phases=None):
    amp = w_state(n, phases)
    basis = ("vac",) + tuple(f"q{i}" for i in range(1, n + 1))
    return ReducedDensityMatrix(basis, np.outer(amp, amp.conj()))


def _as_matrix(rho):
    if isinstance(rho, ReducedDensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def fidelity_phase_optimized(rho, grid=64):
    """max over (phi2, phi3) of <W3'| rho |W3'> with
    |W3'> = (|100> + e^{i phi2}|010> + e^{i phi3}|001>)/sqrt(3).

    A ``grid`` x ``grid`` phase scan seeds a local refinement.  Returns
    (F, phi2, phi3).
    """
    m = _as_matrix(rho)
    if m.shape != (4, 4):
        raise DomainError("phase-optimized fidelity is defined for 3 qubits")
    p = np.real(m[1, 1] + m[2, 2] + m[3, 3])
    r12, r13, r23 = m[1, 2], m[1, 3], m[2, 3]

    def neg_f(phis):
        phi2, phi3 = phis
        cross = (
            r12 * np.exp(1j * phi2)
            + r13 * np.exp(1j * phi3)
            + r23 * np.exp(1j * (phi3 - phi2))
        )
        return -(p + 2.0 * np.real(cross)) / 3.0

    phis = np.linspace(0.0, 2.0 * math.pi, grid, endpoint=False)
    p2, p3 = np.meshgrid(phis, phis, indexing="ij")
    values = (
        np.real(r12) * np.cos(p2) - np.imag(r12) * np.sin(p2)
        + np.real(r13) * np.cos(p3) - np.imag(r13) * np.sin(p3)
        + np.real(r23) * np.cos(p3 - p2) - np.imag(r23) * np.sin(p3 - p2)
    )
    i, j = np.unravel_index(np.argmax(values), values.shape)
    res = minimize(neg_f, [phis[i], phis[j]], method="Nelder-Mead",
                   options={"xatol": 1e-10, "fatol": 1e-14})
    phi2, phi3 = np.mod(res.x, 2.0 * math.pi)
    return float(-res.fun), float(phi2), float(phi3)


def fidelity_witness(fidelity):
    """True iff the fidelity certifies W-class multipartite entanglement."""
    if not 0.0 <= fidelity <= 1.0 + 1e-12:
        raise DomainError(f"fidelity must lie in [0, 1], got {fidelity}")
    return fidelity > 2.0 / 3.0


# mapping of the (vac, q1, q2, q3) reduced basis into the 8-dim 3-qubit
# space with qubit 1 as the most significant bit
_EMBED = (0, 4, 2, 1)


def _embed_pure(state):
    state = np.asarray(state, dtype=complex)
    if state.shape == (8,):
        return state
    if state.shape == (4,):
        out = np.zeros(8, dtype=complex)
        out[list(_EMBED)] = state
        return out
    raise DomainError(f"expected a 4- or 8-component state, got {state.shape}")


def _binary_entropy_bits(eigs):
    eigs = np.clip(np.real(eigs), 0.0, 1.0)
    nz = eigs[eigs > 1e-300]
    return float(-np.sum(nz * np.log2(nz)))


def e3f_pure(state):
    """min over qubits of the single-qubit von Neumann entropy, in bits.

    Accepts a full 8-component 3-qubit state or a 4-component
    (vacuum + single-excitation) state.
    """
    psi = _embed_pure(state)
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-8:
        raise DomainError(f"state norm is {norm}, expected 1")
    psi = (psi / norm).reshape(2, 2, 2)
    best = math.inf
    for axis in range(3):
        mat = np.moveaxis(psi, axis, 0).reshape(2, 4)
        marginal = mat @ mat.conj().T
        best = min(best, _binary_entropy_bits(np.linalg.eigvalsh(marginal)))
    return best


def _spectral_decomposition(rho, cutoff=1e-12):
    m = _as_matrix(rho)
    eigvals, eigvecs = np.linalg.eigh(m)
    if eigvals.min() < -PSD_CUTOFF:
        raise DomainError("density matrix is not positive semidefinite")
    keep = eigvals > cutoff
    return eigvals[keep], eigvecs[:, keep]


PSD_CUTOFF = 1e-10


def _ensemble_value(isometry, sq_vecs):
    """Average pure-state value of the decomposition |w_k> = sum_j
    V_{k,j} sqrt(lambda_j) |v_j>, vectorized over ensemble members."""
    members = isometry @ sq_vecs  # (M, 8), unnormalized
    weights = np.sum(np.abs(members) ** 2, axis=1)
    psi = members.reshape(-1, 2, 2, 2)
    entropies = np.empty((members.shape[0], 3))
    for axis in range(3):
        mat = np.moveaxis(psi, 1 + axis, 1).reshape(-1, 2, 4)
        marg = mat @ mat.conj().transpose(0, 2, 1)  # (M, 2, 2), trace = weight
        tr = np.real(marg[:, 0, 0] + marg[:, 1, 1])
        det = np.real(marg[:, 0, 0] * marg[:, 1, 1]) - np.abs(marg[:, 0, 1]) ** 2
        disc = np.sqrt(np.maximum(tr * tr - 4.0 * det, 0.0))
        safe_tr = np.where(tr > 1e-14, tr, 1.0)
        lo = np.clip((tr - disc) / (2.0 * safe_tr), 0.0, 1.0)
        hi = np.clip(1.0 - lo, 0.0, 1.0)
        ent = np.zeros_like(tr)
        for lam in (lo, hi):
            nz = lam > 1e-300
            ent[nz] -= lam[nz] * np.log2(lam[nz])
        entropies[:, axis] = ent
    return float(np.dot(weights, entropies.min(axis=1)))


def e3f_mixed(rho, restarts=8, m_factor=2, seed=0, return_spread=False):
    """Convex-roof upper bound on the entanglement of formation, in bits.

    The spectral decomposition sum_j lambda_j |v_j><v_j| is deformed by an
    M x n isometry (M = ``m_factor`` * n) parametrized as the first n
    columns of exp(iH); the ensemble-averaged pure-state value is
    minimized by derivative-free local search from the identity plus
    ``restarts`` random starts.  The identity start makes the result never
    exceed the spectral-ensemble average.
    """
    eigvals, eigvecs = _spectral_decomposition(rho)
    n = eigvals.size
    if n == 1:
        return (e3f_pure(eigvecs[:, 0]), 0.0) if return_spread else e3f_pure(eigvecs[:, 0])
    m_dim = max(m_factor * n, n)
    if eigvecs.shape[0] == 4:
        embedded = np.zeros((8, n), dtype=complex)
        embedded[list(_EMBED)] = eigvecs
        eigvecs = embedded
    sq_vecs = (eigvecs * np.sqrt(eigvals)).T  # (n, 8) rows sqrt(l_j) v_j

    iu = np.triu_indices(m_dim, 1)
    n_off = iu[0].size

    def objective(params):
        h = np.zeros((m_dim, m_dim), dtype=complex)
        h[iu] = params[:n_off] + 1j * params[n_off:2 * n_off]
        h = h + h.conj().T
        h[np.diag_indices(m_dim)] = params[2 * n_off:]
        # exp(iH) for Hermitian H via its eigenbasis
        w, v = np.linalg.eigh(h)
        isometry = (v * np.exp(1j * w)) @ v.conj().T[:, :n]
        return _ensemble_value(isometry, sq_vecs)

    n_params = m_dim * m_dim
    best = objective(np.zeros(n_params))  # spectral-ensemble average
    results = [best]
    rng = Generator(PCG64(SeedSequence((seed, 0xE3F))))
    starts = [np.zeros(n_params)]
    starts += [rng.normal(0.0, 0.8, n_params) for _ in range(restarts)]
    for x0 in starts:
        res = minimize(objective, x0, method="Powell",
                       options={"xtol": 1e-5, "ftol": 1e-8, "maxfev": 20000})
        results.append(float(res.fun))
    value = min(results)
    spread = float(np.ptp([r for r in results[1:]]))
    if return_spread:
        return value, spread
    return value
