"""Synthesis of shaped emission and absorption controls.

The controls below shape the envelope of a single travelling photon so that
a tunable fraction 1/n of a qubit excitation is emitted into (or fully
absorbed from) a transmission line.  Two node types are supported: a qubit
coupled to a leaky transfer resonator through a tunable coupling g(t), and
a qubit with a directly controllable decay rate kappa_c(t).

All controls are real.  Closed forms are evaluated in overflow-safe,
cancellation-free rearrangements so they stay finite over wide time
windows.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import erf

from .errors import DomainError, InfeasiblePulseError, IntegrationError

__all__ = [
    "ShapeKind",
    "Direction",
    "PhotonShape",
    "PulseSpec",
    "Channel",
    "ControlSamples",
    "ControlKind",
    "GAUSSIAN_N_MIN",
    "sech_coupling",
    "sech_decay_rate",
    "sech_decay_rate_max",
    "lorentzian_coupling",
    "gaussian_coupling",
    "reduced_bandwidth_coupling",
    "asymmetric_absorption_coupling",
    "purcell_coupling",
    "purcell_resonator_amplitude",
    "purcell_peak_resonator_population",
    "purcell_max_bandwidth",
    "simultaneous_couplings",
    "simultaneous_decay_rates",
    "decay_rates_ode",
    "two_channel_decay_rate",
    "coupling_fn",
    "decay_rate_fn",
    "sample_control",
    "time_reverse",
]

#: Smallest fraction parameter for which a Gaussian photon keeps the
#: emitter population in [0, 1]:  (1 + 2/(e^{1/4} sqrt(pi)) + erf(1/2))/2.
GAUSSIAN_N_MIN = 0.5 * (1.0 + 2.0 / (math.exp(0.25) * math.sqrt(math.pi)) + erf(0.5))


def _log1pexp(x):
    """log(1 + e^x), elementwise and overflow safe."""
    return np.logaddexp(0.0, x)


def _log_sech(x):
    """log(sech(x)), overflow safe for large |x|."""
    return math.log(2.0) - np.logaddexp(x, -x)


# ---------------------------------------------------------------------------
# single-channel couplings (qubit + transfer resonator)
# ---------------------------------------------------------------------------

def sech_coupling(t, n, kappa):
    """Tunable qubit-resonator coupling emitting a sech photon of bandwidth
    ``kappa`` carrying a 1/n excitation fraction.

        g(t; n) = (kappa/2) sech(kappa t / 2) / sqrt((n-1)(1+e^{kappa t})^2 + 1)

    For n = 1 this is the standard kappa/2 * sech(kappa t / 2) pulse.
    """
    if n < 1.0:
        raise DomainError(f"fraction parameter n must be >= 1, got {n}")
    if kappa <= 0.0:
        raise DomainError(f"bandwidth kappa must be positive, got {kappa}")
    t = np.asarray(t, dtype=float)
    x = kappa * t
    log_g = math.log(kappa / 2.0) + _log_sech(x / 2.0)
    if n > 1.0:
        # radicand = (n-1)(1+e^x)^2 + 1, assembled in the log domain
        log_rad = np.logaddexp(math.log(n - 1.0) + 2.0 * _log1pexp(x), 0.0)
        log_g = log_g - 0.5 * log_rad
    return np.exp(log_g)


def sech_decay_rate(t, n, kappa):
    """Controllable qubit decay rate emitting the same sech photon.

        kappa_c(t; n) = kappa sech^2(kappa t/2) / (2 (2n - 1 - tanh(kappa t/2)))

    Nonnegative everywhere; for n = 1 it simplifies to
    (kappa/2)(1 + tanh(kappa t/2)) and saturates at kappa.
    """
    if n < 1.0:
        raise DomainError(f"fraction parameter n must be >= 1, got {n}")
    if kappa <= 0.0:
        raise DomainError(f"bandwidth kappa must be positive, got {kappa}")
    t = np.asarray(t, dtype=float)
    th = np.tanh(kappa * t / 2.0)
    if n == 1.0:
        # the (1 - tanh) factor cancels against the denominator
        return kappa * (1.0 + th) / 2.0
    sech2 = np.exp(2.0 * _log_sech(kappa * t / 2.0))
    return kappa * sech2 / (2.0 * (2.0 * n - 1.0 - th))


def sech_decay_rate_max(n, kappa):
    """Largest value attained by :func:`sech_decay_rate` over all times."""
    if n < 1.0:
        raise DomainError(f"fraction parameter n must be >= 1, got {n}")
    if n == 1.0:
        return kappa
    return kappa * (2.0 * n - 1.0 - 2.0 * math.sqrt(n * n - n))


def lorentzian_coupling(t, n, kappa):
    """Coupling emitting a Lorentzian photon |gamma|^2 ~ 1/(1 + kappa^2 t^2).

    Physical (|q|^2 in [0, 1]) for every n >= 1.  The control vanishes at
    kappa t = 1 and decays only as 1/t, so Lorentzian pulses need much wider
    truncation windows than the exponentially localised families.
    """
    if n < 1.0:
        raise DomainError(f"fraction parameter n must be >= 1, got {n}")
    if kappa <= 0.0:
        raise DomainError(f"bandwidth kappa must be positive, got {kappa}")
    t = np.asarray(t, dtype=float)
    u = kappa * t
    # (4n-2)pi - 4 atan(u) rewritten as (4n-4)pi + 4(pi/2 - atan(u)) to avoid
    # cancellation at large positive u
    half_residual = np.where(u > 0.0, np.arctan2(1.0, np.abs(u)), math.pi / 2.0 - np.arctan(u))
    radicand = (1.0 + u * u) * ((4.0 * n - 4.0) * math.pi + 4.0 * half_residual) - 4.0
    return kappa * (u - 1.0) ** 2 / ((1.0 + u * u) * np.sqrt(radicand))


def gaussian_coupling(t, n, kappa):
    """Coupling emitting a Gaussian photon; requires n >= GAUSSIAN_N_MIN.

    The control changes sign at t = 1/(2 kappa); the signed form is kept.
    At n = GAUSSIAN_N_MIN the 0/0 point at the sign change evaluates to the
    finite one-sided limits +-kappa (0 exactly at the node).
    """
    if kappa <= 0.0:
        raise DomainError(f"bandwidth kappa must be positive, got {kappa}")
    if n < GAUSSIAN_N_MIN * (1.0 - 1e-12):
        raise InfeasiblePulseError(
            f"Gaussian emission needs n >= {GAUSSIAN_N_MIN:.10f}, got {n}",
            bound=GAUSSIAN_N_MIN,
        )
    t = np.asarray(t, dtype=float)
    u = kappa * t
    num = kappa * np.exp(-u * u / 2.0) * (2.0 * u - 1.0)
    radicand = 2.0 * math.sqrt(math.pi) * (2.0 * n - 1.0 - erf(u)) - 4.0 * np.exp(-u * u)
    radicand = np.maximum(radicand, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        g = num / np.sqrt(radicand)
    # 0/0 only occurs at u = 1/2 when n = n_min; the limit magnitude is kappa
    bad = ~np.isfinite(g)
    if np.any(bad):
        g = np.where(bad, kappa * np.sign(2.0 * u - 1.0), g)
    return g


def reduced_bandwidth_coupling(t, eta, n, kappa):
    """Coupling emitting a sech photon whose bandwidth kappa/eta is narrowed
    by a factor eta >= 1 while the resonator still decays at kappa.

        g(t, eta; n) = (kappa / 2 eta) sech(x) (eta - tanh x)
                       / sqrt(2 eta (2n - 1 - tanh x) - sech^2 x),
        x = kappa t / (2 eta)

    Reduces to :func:`sech_coupling` at eta = 1.
    """
    if eta < 1.0:
        raise DomainError(
            f"bandwidth reduction factor eta must be >= 1, got {eta}"
        )
    if n < 1.0:
        raise DomainError(f"fraction parameter n must be >= 1, got {n}")
    if kappa <= 0.0:
        raise DomainError(f"bandwidth kappa must be positive, got {kappa}")
    t = np.asarray(t, dtype=float)
    x = kappa * t / (2.0 * eta)
    # with E = e^{2x}:  eta - tanh x = (eta-1) + 2/(1+E)  and the radicand
    # 2 eta (2n-1-tanh x) - sech^2 x = 4 [eta(n-1) + ((eta-1)E + eta)/(1+E)^2],
    # both free of the eta -> 1 cancellation of the naive forms
    logden = _log1pexp(2.0 * x)  # log(1+E)
    num_factor = (eta - 1.0) + 2.0 * np.exp(-logden)
    radicand = eta * (n - 1.0) + (eta - 1.0) * np.exp(2.0 * x - 2.0 * logden) \
        + eta * np.exp(-2.0 * logden)
    sech = 2.0 * np.exp(x - logden)
    return (kappa / (4.0 * eta)) * sech * num_factor / np.sqrt(radicand)


def asymmetric_absorption_coupling(t, kappa, eta):
    """Control for a node of decay rate kappa_e = eta * kappa exchanging a
    sech photon of bandwidth kappa (n = 1).

    Used time-reversed, it perfectly absorbs a kappa-bandwidth photon into
    a faster-decaying receiver.  eta < 1 (receiver slower than the photon)
    is rejected: a photon wider than the receiver bandwidth cannot be fully
    absorbed.
    """
    if eta < 1.0:
        raise InfeasiblePulseError(
            "cannot absorb a photon wider than the receiver bandwidth "
            f"(eta = kappa_e/kappa = {eta} < 1)",
            bound=1.0,
        )
    # identical to emitting a kappa-bandwidth photon from a resonator with
    # decay eta*kappa, i.e. the eta-narrowed control at kappa_e = eta*kappa
    return reduced_bandwidth_coupling(t, eta, 1.0, eta * kappa)


# ---------------------------------------------------------------------------
# Purcell-filtered node
# ---------------------------------------------------------------------------

def purcell_max_bandwidth(n, g_p):
    """Largest photon bandwidth kappa for which the Purcell-filtered
    emission keeps the qubit population in [0, 1].

    Exactly 2 g_p at n = 1; found numerically for n > 1 (about 3.8 g_p at
    n = 2).
    """
    if n < 1.0:
        raise DomainError(f"fraction parameter n must be >= 1, got {n}")
    if g_p <= 0.0:
        raise DomainError(f"filter coupling g_p must be positive, got {g_p}")
    if n == 1.0:
        return 2.0 * g_p
    # |q|^2 >= 0 requires kappa^2 <= g_p^2 * min_E (1+E)^2 ((n-1)(1+E)^2 + 1)/E
    logE = np.linspace(-40.0, 40.0, 20001)
    E = np.exp(logE)
    h = (1.0 + E) ** 2 * ((n - 1.0) * (1.0 + E) ** 2 + 1.0) / E
    return g_p * math.sqrt(float(np.min(h)))


def _check_purcell(n, kappa, g_p):
    bound = purcell_max_bandwidth(n, g_p)
    if kappa > bound * (1.0 + 1e-12):
        raise InfeasiblePulseError(
            f"Purcell-filtered emission infeasible: kappa = {kappa:.6g} exceeds "
            f"the bound {bound:.6g} (= {bound / g_p:.4g} g_p at n = {n})",
            bound=bound,
        )


def purcell_coupling(t, n, kappa, g_p):
    """Qubit-resonator coupling when a Purcell filter (coupling g_p, decay
    kappa into the line) sits between resonator and waveguide.

    Feasible only for kappa <= 2 g_p at n = 1 (larger bound for n > 1).
    """
    if n < 1.0:
        raise DomainError(f"fraction parameter n must be >= 1, got {n}")
    if kappa <= 0.0:
        raise DomainError(f"bandwidth kappa must be positive, got {kappa}")
    _check_purcell(n, kappa, g_p)
    t = np.asarray(t, dtype=float)
    E = np.exp(kappa * t)
    one = (1.0 + E) ** 2
    num = E * (2.0 * one * g_p**2 + (1.0 - 3.0 * E) * kappa**2) * np.cosh(kappa * t / 2.0)
    # cancellation-free radicand: g_p^2 (1+E)^2 ((n-1)(1+E)^2 + 1) - E kappa^2
    radicand = g_p**2 * one * ((n - 1.0) * one + 1.0) - E * kappa**2
    radicand = np.maximum(radicand, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        g = num / (one * np.sqrt(radicand))
    return np.where(np.isfinite(g), g, 0.0)


def purcell_resonator_amplitude(t, n, kappa, g_p):
    """Transfer-resonator amplitude |r(t)| during Purcell-filtered emission:
    kappa e^{kappa t/2} / ((1+e^{kappa t})^2 g_p sqrt(n))."""
    t = np.asarray(t, dtype=float)
    log_r = (
        math.log(kappa / (g_p * math.sqrt(n)))
        + kappa * t / 2.0
        - 2.0 * _log1pexp(kappa * t)
    )
    return np.exp(log_r)


def purcell_peak_resonator_population(n, kappa, g_p):
    """Peak of |r(t)|^2 during Purcell-filtered emission.

    The amplitude kappa e^{kappa t/2}/((1+e^{kappa t})^2 g_p sqrt(n)) peaks
    at t = -ln(3)/kappa, giving 27 kappa^2 / (256 g_p^2 n).
    """
    return 27.0 * kappa**2 / (256.0 * g_p**2 * n)


# ---------------------------------------------------------------------------
# simultaneous emission through several channels
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Channel:
    """One output channel of a simultaneous emission: bandwidth, fraction
    parameter, and optional emission delay."""

    kappa: float
    n: float
    delay: float = 0.0

    def __post_init__(self):
        if self.kappa <= 0.0:
            raise DomainError(f"channel bandwidth must be positive, got {self.kappa}")
        if self.n < 1.0:
            raise DomainError(f"channel fraction parameter must be >= 1, got {self.n}")


def _check_channels(channels):
    channels = [c if isinstance(c, Channel) else Channel(*c) for c in channels]
    total = sum(1.0 / c.n for c in channels)
    if total > 1.0 + 1e-12:
        raise InfeasiblePulseError(
            f"simultaneous fractions sum to {total:.6g} > 1; cannot emit more "
            "than the full excitation",
            bound=1.0,
        )
    return channels, total


def _emitter_population_sim(t, channels):
    """|q_E(t)|^2 = 1 - sum_k K_k(t) in the cancellation-free form
    (1 - sum 1/n_k) + sum_k 1/(n_k (1+e^{kappa_k (t-t_k)})^2)."""
    t = np.asarray(t, dtype=float)
    total = sum(1.0 / c.n for c in channels)
    resid = np.full(t.shape, 1.0 - total)
    for c in channels:
        resid = resid + np.exp(-2.0 * _log1pexp(c.kappa * (t - c.delay))) / c.n
    return resid


def simultaneous_couplings(t, channels):
    """Emitter couplings g_j(t; n) driving simultaneous sech emissions with
    fractions 1/n_j through each channel.

    Requires sum_k 1/n_k <= 1.  A channel with n_j -> infinity gets an
    identically zero control; with all other n -> infinity a channel's
    control reduces to :func:`sech_coupling`.

    Returns an array of shape (len(channels), len(t)).
    """
    channels, _ = _check_channels(channels)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    resid = _emitter_population_sim(t, channels)
    out = np.empty((len(channels), t.size))
    for j, c in enumerate(channels):
        x = c.kappa * (t - c.delay)
        log_num = math.log(c.kappa) + x / 2.0 - 2.0 * _log1pexp(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            g = np.exp(log_num) / np.sqrt(c.n * np.maximum(resid, 0.0))
        out[j] = np.where(np.isfinite(g), g, 0.0)
    return out


def simultaneous_decay_rates(t, channels):
    """Controllable decay rates kappa_{c,j}(t) for simultaneous emission
    from a directly coupled qubit.

    Equal bandwidths and delays use the closed form

        kappa_{c,j} = kappa e^x / (n_j (1 + e^x)(1 + (1 - ntot) e^x)),
        x = kappa t,  ntot = sum_k 1/n_k,

    which reduces to :func:`sech_decay_rate` for a single channel and tends
    to kappa/n_j at late times when ntot = 1.  Unequal bandwidths or delays
    are handled by integrating the decay-rate ODE (:func:`decay_rates_ode`).
    """
    channels, total = _check_channels(channels)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    kappas = {c.kappa for c in channels}
    delays = {c.delay for c in channels}
    if len(kappas) == 1 and len(delays) == 1:
        kappa = channels[0].kappa
        x = kappa * (t - channels[0].delay)
        log_core = x - _log1pexp(x)
        if total < 1.0:
            log_core = log_core - _log1pexp(x + math.log1p(-total))
        else:
            # ntot = 1: denominator factor (1 + (1-ntot) e^x) is exactly 1
            pass
        core = kappa * np.exp(log_core)
        return np.vstack([core / c.n for c in channels])
    return decay_rates_ode(t, channels)


def _sech_sq(x):
    return np.exp(2.0 * _log_sech(x))


def decay_rates_ode(t, channels):
    """Numerically integrate the multi-channel decay-rate ODE

        d kappa_1/dt = (sum_k f_k^2) kappa_1^2 + 2 kappa_1 (dgamma_1/gamma_1)

    with f_k = gamma_k/gamma_1, subject to |q(-infinity)|^2 = 1, and return
    all kappa_{c,j} = f_j^2 kappa_1 on the requested grid.
    """
    channels, _ = _check_channels(channels)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    c1 = channels[0]

    def gamma_sq(c, tt):
        return c.kappa / (4.0 * c.n) * _sech_sq(c.kappa * (tt - c.delay) / 2.0)

    def mass(c, tt):
        return (1.0 + np.tanh(c.kappa * (tt - c.delay) / 2.0)) / (2.0 * c.n)

    def rhs(tt, y):
        g1 = gamma_sq(c1, tt)
        fsum = sum(gamma_sq(c, tt) for c in channels) / g1
        dlog = -c1.kappa * np.tanh(c1.kappa * (tt - c1.delay) / 2.0)
        return fsum * y**2 + dlog * y

    t0 = float(t[0])
    q0 = 1.0 - sum(mass(c, t0) for c in channels)
    y0 = gamma_sq(c1, t0) / q0
    sol = solve_ivp(
        rhs, (t0, float(t[-1])), [float(y0)], t_eval=t,
        method="DOP853", rtol=1e-10, atol=1e-16 * c1.kappa,
    )
    if not sol.success:
        raise IntegrationError(f"decay-rate ODE failed: {sol.message}")
    k1 = sol.y[0]
    if np.any(k1 < -1e-9 * c1.kappa):
        raise IntegrationError("decay-rate ODE produced a negative rate")
    k1 = np.maximum(k1, 0.0)
    g1 = gamma_sq(c1, t)
    return np.vstack([gamma_sq(c, t) / g1 * k1 for c in channels])


def two_channel_decay_rate(t, ch1, ch2):
    """Closed-form kappa_{c,1}(t) for two simultaneous sech emissions with
    arbitrary bandwidths: gamma_1^2 / (1 - integral of gamma_1^2 + gamma_2^2).
    """
    (ch1, ch2), _ = _check_channels([ch1, ch2])
    t = np.asarray(t, dtype=float)
    g1sq = ch1.kappa / (4.0 * ch1.n) * _sech_sq(ch1.kappa * (t - ch1.delay) / 2.0)
    m = sum(
        (1.0 + np.tanh(c.kappa * (t - c.delay) / 2.0)) / (2.0 * c.n)
        for c in (ch1, ch2)
    )
    return g1sq / (1.0 - m)


# ---------------------------------------------------------------------------
# shape / pulse descriptions and sampling
# ---------------------------------------------------------------------------

class ShapeKind(enum.Enum):
    SECH = "sech"
    LORENTZIAN = "lorentzian"
    GAUSSIAN = "gaussian"
    SECH_REDUCED = "sech_reduced"


class Direction(enum.Enum):
    EMIT = "emit"
    ABSORB = "absorb"


class ControlKind(enum.Enum):
    QUBIT_RESONATOR_COUPLING = "coupling"
    QUBIT_DECAY_RATE = "decay_rate"


@dataclass(frozen=True)
class PhotonShape:
    """Parametric description of a photon envelope gamma(t).

    ``bandwidth`` is the envelope bandwidth kappa in rad/s, ``fraction`` the
    parameter n >= 1 (the photon carries probability 1/n), ``eta`` the
    bandwidth-reduction factor (SECH_REDUCED only) and ``delay`` a time
    shift of the envelope centre.
    """

    kind: ShapeKind
    bandwidth: float
    fraction: float = 1.0
    eta: float = 1.0
    delay: float = 0.0

    def __post_init__(self):
        if self.bandwidth <= 0.0:
            raise DomainError(f"bandwidth must be positive, got {self.bandwidth}")
        if self.kind is ShapeKind.GAUSSIAN:
            if self.fraction < GAUSSIAN_N_MIN * (1.0 - 1e-12):
                raise InfeasiblePulseError(
                    f"Gaussian photons require n >= {GAUSSIAN_N_MIN:.10f} "
                    f"(got n = {self.fraction})",
                    bound=GAUSSIAN_N_MIN,
                )
        elif self.fraction < 1.0:
            raise DomainError(f"fraction parameter must be >= 1, got {self.fraction}")
        if self.kind is ShapeKind.SECH_REDUCED and self.eta < 1.0:
            raise DomainError(f"eta must be >= 1, got {self.eta}")

    def envelope(self, t):
        """|gamma(t)| in units of sqrt(rad/s)."""
        t = np.asarray(t, dtype=float) - self.delay
        k, n = self.bandwidth, self.fraction
        if self.kind is ShapeKind.SECH:
            return np.sqrt(k / (4.0 * n)) * np.exp(_log_sech(k * t / 2.0))
        if self.kind is ShapeKind.SECH_REDUCED:
            e = self.eta
            return np.sqrt(k / (4.0 * e * n)) * np.exp(_log_sech(k * t / (2.0 * e)))
        if self.kind is ShapeKind.LORENTZIAN:
            return np.sqrt(k / (n * math.pi * (1.0 + (k * t) ** 2)))
        if self.kind is ShapeKind.GAUSSIAN:
            return np.sqrt(k / (math.sqrt(math.pi) * n)) * np.exp(-((k * t) ** 2) / 2.0)
        raise DomainError(f"unknown shape kind {self.kind}")

    def cumulative_mass(self, t):
        """integral of |gamma|^2 from -infinity to t (closed form)."""
        t = np.asarray(t, dtype=float) - self.delay
        k, n = self.bandwidth, self.fraction
        if self.kind is ShapeKind.SECH:
            return (1.0 + np.tanh(k * t / 2.0)) / (2.0 * n)
        if self.kind is ShapeKind.SECH_REDUCED:
            return (1.0 + np.tanh(k * t / (2.0 * self.eta))) / (2.0 * n)
        if self.kind is ShapeKind.LORENTZIAN:
            return (np.arctan(k * t) + math.pi / 2.0) / (n * math.pi)
        if self.kind is ShapeKind.GAUSSIAN:
            return (1.0 + erf(k * t)) / (2.0 * n)
        raise DomainError(f"unknown shape kind {self.kind}")

    def total_mass(self):
        """integral of |gamma|^2 over all times: exactly 1/n."""
        return 1.0 / self.fraction

    def window(self, tail_mass=1e-9):
        """Symmetric truncation window (t_lo, t_hi) leaving at most
        ``tail_mass`` of the *unit-normalised* envelope outside.

        Exponentially localised shapes get +-12 eta / kappa by default; the
        Lorentzian's 1/t^2 tails force a much wider window.
        """
        k = self.bandwidth
        if self.kind is ShapeKind.LORENTZIAN:
            half = 2.0 / (math.pi * max(tail_mass, 1e-12)) / k
        elif self.kind is ShapeKind.GAUSSIAN:
            half = max(math.sqrt(-2.0 * math.log(max(tail_mass, 1e-300))), 6.0) / k
        else:
            # sech mass tail ~ e^{-kappa t / eta} per side
            half = self.eta * max(-math.log(max(tail_mass, 1e-300)) + 1.0, 12.0) / k
        return (self.delay - half, self.delay + half)


@dataclass(frozen=True)
class PulseSpec:
    """An emission or absorption control request.

    Absorption always runs with n = 1 (the receiver fully absorbs), so an
    ABSORB spec with fraction != 1 is rejected.  ``purcell_gp`` switches to
    the Purcell-filtered control; ``channels`` describes a simultaneous
    multi-channel emission.
    """

    shape: PhotonShape
    direction: Direction = Direction.EMIT
    phase: float = 0.0
    purcell_gp: float | None = None
    channels: tuple[Channel, ...] | None = None

    def __post_init__(self):
        if self.direction is Direction.ABSORB and self.shape.fraction != 1.0:
            raise DomainError(
                "absorption always uses n = 1; got "
                f"n = {self.shape.fraction} on an ABSORB pulse"
            )
        if self.channels is not None:
            _check_channels(self.channels)
        if self.purcell_gp is not None:
            _check_purcell(self.shape.fraction, self.shape.bandwidth, self.purcell_gp)


@dataclass(frozen=True)
class ControlSamples:
    """Sampled control waveform on a monotone time grid."""

    times: np.ndarray
    values: np.ndarray
    kind: ControlKind = ControlKind.QUBIT_RESONATOR_COUPLING
    tail_mass: float = 0.0  # envelope mass clamped outside the window

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        if times.ndim != 1 or times.shape != values.shape:
            raise DomainError("times and values must be matching 1-D arrays")
        if times.size >= 2 and np.any(np.diff(times) <= 0.0):
            raise DomainError("sample times must be strictly increasing")
        if not (np.all(np.isfinite(times)) and np.all(np.isfinite(values))):
            raise DomainError("control samples must be finite")
        if self.kind is ControlKind.QUBIT_DECAY_RATE and np.any(values < 0.0):
            raise DomainError("decay-rate controls must be nonnegative")


def coupling_fn(shape, purcell_gp=None):
    """Emission coupling g(t) for a photon shape (qubit-resonator node)."""
    k, n, d = shape.bandwidth, shape.fraction, shape.delay
    if purcell_gp is not None:
        if shape.kind is not ShapeKind.SECH:
            raise DomainError("Purcell-filtered controls are derived for sech photons")
        return lambda t: purcell_coupling(np.asarray(t) - d, n, k, purcell_gp)
    if shape.kind is ShapeKind.SECH:
        return lambda t: sech_coupling(np.asarray(t) - d, n, k)
    if shape.kind is ShapeKind.LORENTZIAN:
        return lambda t: lorentzian_coupling(np.asarray(t) - d, n, k)
    if shape.kind is ShapeKind.GAUSSIAN:
        return lambda t: gaussian_coupling(np.asarray(t) - d, n, k)
    if shape.kind is ShapeKind.SECH_REDUCED:
        return lambda t: reduced_bandwidth_coupling(np.asarray(t) - d, shape.eta, n, k)
    raise DomainError(f"unknown shape kind {shape.kind}")


def decay_rate_fn(shape):
    """Emission decay rate kappa_c(t) for a photon shape (direct-decay node).

    Uses the generic quotient |gamma|^2 / (1 - cumulative mass); for sech
    photons this equals :func:`sech_decay_rate`.
    """
    if shape.kind is ShapeKind.SECH:
        k, n, d = shape.bandwidth, shape.fraction, shape.delay
        return lambda t: sech_decay_rate(np.asarray(t) - d, n, k)

    def kc(t):
        g2 = shape.envelope(t) ** 2
        return g2 / (1.0 - shape.cumulative_mass(t))

    return kc


def sample_control(spec, n_samples=2049, window=None):
    """Sample a pulse onto a time grid, returning :class:`ControlSamples`.

    The grid covers the shape's truncation window; the residual envelope
    mass outside is recorded on the result for error budgeting.
    """
    shape = spec.shape if isinstance(spec, PulseSpec) else spec
    purcell_gp = spec.purcell_gp if isinstance(spec, PulseSpec) else None
    if window is None:
        window = shape.window()
    times = np.linspace(window[0], window[1], n_samples)
    if isinstance(spec, PulseSpec) and spec.direction is Direction.ABSORB:
        values = coupling_fn(shape, purcell_gp)(times)
        samples = ControlSamples(times, values, ControlKind.QUBIT_RESONATOR_COUPLING)
        return time_reverse(samples, t_d=2.0 * shape.delay)
    values = coupling_fn(shape, purcell_gp)(times)
    tail = float(
        shape.fraction * (shape.total_mass() - shape.cumulative_mass(window[1])
                          + shape.cumulative_mass(window[0]))
    )
    return ControlSamples(times, values, ControlKind.QUBIT_RESONATOR_COUPLING, tail)


def time_reverse(samples, t_d=0.0):
    """Reflect an emission control about t = 0 and delay it by t_d,
    producing the absorption-side waveform g(-t + t_d).

    Absorption always uses the n = 1 pulse regardless of the emitted
    fraction, so callers pass the n = 1 synthesis of the matching shape.
    """
    times = t_d - samples.times[::-1]
    values = samples.values[::-1].copy()
    return ControlSamples(times, values, samples.kind, samples.tail_mass)
