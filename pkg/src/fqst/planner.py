"""Fraction schedules for target entangled states, and their assembly
into executable control schedules.

Fractions are carried as exact rationals: the sequential W-state plan
compounds n_k = (N+1-k)/(N-k) multiplicatively and float drift would bias
the predicted amplitudes.

Timing convention: the quoted protocol duration is control time.  Each
hop's emission and absorption windows are half the per-hop control time;
the absorption window additionally lags by the propagation delay t_d, so
the wall-clock span of a schedule is the control time plus t_d per hop.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .dynamics import Schedule
from .errors import DomainError
from .network import Topology, propagation_delay
from .pulses import ControlSamples, sech_coupling, simultaneous_couplings

__all__ = [
    "PlanKind",
    "FractionPlan",
    "ScheduleTiming",
    "sequential_w_fractions",
    "bell_endpoint_fractions",
    "even_site_w_fractions",
    "star_w_fractions",
    "assemble_schedule",
]


class PlanKind(enum.Enum):
    SEQUENTIAL = "sequential"
    STAR = "star"


@dataclass(frozen=True)
class FractionPlan:
    """A list of transfer fractions plus the state they should produce.

    ``fractions``: per-hop n_k (sequential) or per-spoke n_j (star), as
    exact Fractions.  ``predicted_moduli``: |q_j| on each network qubit
    after execution (emitter first for star plans).
    """

    kind: PlanKind
    fractions: tuple[Fraction, ...]
    predicted_moduli: tuple[float, ...]
    description: str = ""

    def __post_init__(self):
        if self.kind is PlanKind.STAR:
            total = sum(Fraction(1, 1) / n for n in self.fractions)
            if total > 1:
                raise DomainError(f"star fractions sum to {total} > 1")
        else:
            if any(n < 1 for n in self.fractions):
                raise DomainError("sequential fractions must be >= 1")

    @property
    def residual(self):
        """Probability not placed on any predicted qubit."""
        return 1.0 - sum(m * m for m in self.predicted_moduli)


def _sequential_moduli(fractions):
    """|q_j| from the product formulas: hop k leaves sqrt((n_k-1)/n_k) of
    the incoming weight on the sender and forwards sqrt(1/n_k)."""
    moduli = []
    carried = Fraction(1)
    for n in fractions:
        moduli.append(carried * (1 - Fraction(1, 1) / n))
        carried = carried / n
    moduli.append(carried)
    return tuple(math.sqrt(float(m)) for m in moduli)


def sequential_w_fractions(n_qubits):
    """Hop fractions n_k = (N+1-k)/(N-k) leaving an N-qubit W state on a
    chain; strictly increasing with terminal value exactly 2."""
    if n_qubits < 2:
        raise DomainError(f"need at least 2 qubits, got {n_qubits}")
    fractions = tuple(
        Fraction(n_qubits + 1 - k, n_qubits - k) for k in range(1, n_qubits)
    )
    moduli = _sequential_moduli(fractions)
    assert all(
        abs(m - 1.0 / math.sqrt(n_qubits)) < 1e-12 for m in moduli
    )
    return FractionPlan(PlanKind.SEQUENTIAL, fractions, moduli,
                        f"W{n_qubits} on a chain")


def bell_endpoint_fractions(n_qubits):
    """Bell pair between the first and last qubit of a chain: n_1 = 2,
    every later hop forwards fully (n = 1)."""
    if n_qubits < 2:
        raise DomainError(f"need at least 2 qubits, got {n_qubits}")
    fractions = (Fraction(2),) + (Fraction(1),) * (n_qubits - 2)
    moduli = _sequential_moduli(fractions)
    return FractionPlan(PlanKind.SEQUENTIAL, fractions, moduli,
                        f"Bell pair between qubits 1 and {n_qubits}")


def even_site_w_fractions(n_qubits):
    """W state over the even sites of a chain: odd hops forward fully,
    the hop into even site 2j deposits 2/N of the weight by
    n_{2j} = (N - 2j + 2)/(N - 2j)."""
    if n_qubits % 2 != 0:
        raise DomainError(f"even-site plans need an even qubit count, got {n_qubits}")
    if n_qubits < 4:
        raise DomainError("even-site plans need at least 4 qubits")
    fractions = []
    for k in range(1, n_qubits):
        if k % 2 == 1:
            fractions.append(Fraction(1))
        else:
            j = k // 2
            fractions.append(Fraction(n_qubits - 2 * j + 2, n_qubits - 2 * j))
    moduli = _sequential_moduli(tuple(fractions))
    return FractionPlan(PlanKind.SEQUENTIAL, tuple(fractions), moduli,
                        f"W{n_qubits // 2} on the even sites of a {n_qubits}-chain")


def star_w_fractions(n_spokes, include_emitter=False):
    """Simultaneous star fractions: (N,...,N) for a W state over the N
    receivers, or (N+1,...,N+1) to include the emitter."""
    if n_spokes < 1:
        raise DomainError(f"need at least 1 spoke, got {n_spokes}")
    n = n_spokes + 1 if include_emitter else n_spokes
    fractions = (Fraction(n),) * n_spokes
    emitter = math.sqrt(1.0 - n_spokes / n)
    moduli = (emitter,) + (1.0 / math.sqrt(n),) * n_spokes
    label = f"W{n_spokes + 1} including the emitter" if include_emitter \
        else f"W{n_spokes} on the receivers"
    return FractionPlan(PlanKind.STAR, fractions, moduli, label)


@dataclass(frozen=True)
class ScheduleTiming:
    """Window sizing for schedule assembly.

    ``control_time``: total control duration (sequential default 17.5/kappa
    per hop, i.e. 35/kappa for two hops; star default 14/kappa).  Each hop
    fills an equal share of it, split between the emission and absorption
    windows.  ``samples``: points per sampled pulse.
    """

    control_time: float | None = None
    samples: int = 1025
    alignment_offset: float = 0.0


def _sampled(values_fn, center, half, samples):
    t = np.linspace(center - half, center + half, samples)
    return ControlSamples(t, values_fn(t - center))


def assemble_schedule(plan, spec, timing=None):
    """Turn a fraction plan into per-coupler control samples on a network.

    Sequential plans map hop k onto couplers (sender R, receiver L) of a
    chain; star plans drive all emitter couplers simultaneously.  Every
    absorption is the time-reversed full-absorption pulse, delayed by the
    link's propagation delay (plus any calibration offset).
    """
    if timing is None:
        timing = ScheduleTiming()
    if not plan.fractions:
        return Schedule((), duration=0.0)
    if plan.kind is PlanKind.SEQUENTIAL:
        if spec.topology is not Topology.LINEAR:
            raise DomainError("sequential plans need a linear network")
        n_hops = len(plan.fractions)
        if n_hops != len(spec.nodes) - 1:
            raise DomainError(
                f"plan has {n_hops} hops but the chain has {len(spec.nodes) - 1}"
            )
        kappa = spec.links[0][0].decay_rate
        control_time = timing.control_time or 17.5 * n_hops / kappa
        half = control_time / (2.0 * n_hops)
        assignments = []
        center = half
        end = 0.0
        for k, n_k in enumerate(plan.fractions):
            wg, near, far = spec.links[k]
            t_d = propagation_delay(wg) + timing.alignment_offset
            n_val = float(n_k)
            assignments.append((near, _sampled(
                lambda t, nv=n_val: sech_coupling(t, nv, kappa),
                center, half, timing.samples)))
            assignments.append((far, _sampled(
                lambda t: sech_coupling(-t, 1.0, kappa),
                center + t_d, half, timing.samples)))
            end = center + t_d + half
            center = center + t_d + 2.0 * half
        return Schedule(tuple(assignments), t_s=2.0 * half, duration=end)

    if spec.topology is not Topology.STAR:
        raise DomainError("star plans need a star network")
    if len(plan.fractions) != len(spec.links):
        raise DomainError(
            f"plan has {len(plan.fractions)} spokes but the star has {len(spec.links)}"
        )
    kappa = spec.links[0][0].decay_rate
    control_time = timing.control_time or 14.0 / kappa
    half = control_time / 2.0
    center = half
    t = np.linspace(0.0, 2.0 * half, timing.samples)
    channels = [(wg.decay_rate, float(n_j), 0.0)
                for (wg, _near, _far), n_j in zip(spec.links, plan.fractions)]
    couplings = simultaneous_couplings(t - center, channels)
    assignments = []
    end = 0.0
    for j, (wg, near, far) in enumerate(spec.links):
        t_d = propagation_delay(wg) + timing.alignment_offset
        assignments.append((near, ControlSamples(t, couplings[j])))
        assignments.append((far, _sampled(
            lambda tt: sech_coupling(-tt, 1.0, wg.decay_rate),
            center + t_d, half, timing.samples)))
        end = max(end, center + t_d + half)
    return Schedule(tuple(assignments), t_s=0.0, duration=end)
