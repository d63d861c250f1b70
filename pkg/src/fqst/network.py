"""Single-excitation network construction.

Builds the data for linear chains and stars of qubit nodes connected by
rectangular-waveguide links: node and coupler registries, discretized
standing modes with the WR90 dispersion, parity-alternating mode couplings,
and Lamb-shift corrected qubit detunings.

All dynamics downstream run in the frame rotating at the waveguide centre
frequency, so every stored frequency is a detuning.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.constants import c as SPEED_OF_LIGHT

from .errors import DomainError

__all__ = [
    "WR90_CROSS_SECTION",
    "Topology",
    "NodeKind",
    "WaveguideSpec",
    "NodeSpec",
    "NetworkSpec",
    "build_linear",
    "build_star",
    "lamb_shift_correction",
    "propagation_delay",
]

#: Long transverse dimension of a WR90 rectangular waveguide [m].
WR90_CROSS_SECTION = 0.02286


class Topology(enum.Enum):
    LINEAR = "linear"
    STAR = "star"


class NodeKind(enum.Enum):
    QUBIT_RESONATOR = "qubit_resonator"
    QUBIT_DIRECT_DECAY = "qubit_direct_decay"


@dataclass(frozen=True)
class WaveguideSpec:
    """A length-L waveguide link discretized into standing modes.

    The dispersion is Omega(k) = c sqrt((pi/l_c)^2 + k^2) on the grid
    k_m = m pi / L; the ``mode_count`` modes nearest the centre frequency
    are kept.  Mode m couples with +G_k at the near port and (-1)^m G_k at
    the far port.
    """

    length: float
    mode_count: int
    center_frequency: float
    decay_rate: float
    cross_section: float = WR90_CROSS_SECTION
    speed_of_light: float = SPEED_OF_LIGHT

    def __post_init__(self):
        if self.length <= 0.0:
            raise DomainError(f"waveguide length must be positive, got {self.length}")
        if self.mode_count < 1:
            raise DomainError(f"mode_count must be >= 1, got {self.mode_count}")
        if self.decay_rate <= 0.0:
            raise DomainError(f"decay rate must be positive, got {self.decay_rate}")
        if self.center_frequency <= self.cutoff_frequency:
            raise DomainError(
                f"centre frequency {self.center_frequency:.6g} rad/s is at or "
                f"below the waveguide cutoff {self.cutoff_frequency:.6g} rad/s"
            )

    @property
    def cutoff_frequency(self):
        return self.speed_of_light * math.pi / self.cross_section

    def dispersion(self, k):
        k = np.asarray(k, dtype=float)
        return self.speed_of_light * np.sqrt((math.pi / self.cross_section) ** 2 + k * k)

    @property
    def group_velocity(self):
        """dOmega/dk at the centre frequency: c sqrt(1 - (w_cut/w)^2)."""
        ratio = self.cutoff_frequency / self.center_frequency
        return self.speed_of_light * math.sqrt(1.0 - ratio * ratio)

    @property
    def free_spectral_range(self):
        """Mode spacing near the centre frequency, pi v_g / L."""
        return math.pi * self.group_velocity / self.length

    def mode_numbers(self):
        """The ``mode_count`` consecutive integers m whose frequencies
        Omega(m pi/L) are nearest the centre frequency."""
        omega = self.center_frequency
        k_center = math.sqrt((omega / self.speed_of_light) ** 2
                             - (math.pi / self.cross_section) ** 2)
        m_center = max(int(round(k_center * self.length / math.pi)), 1)
        half = self.mode_count // 2
        m_lo = max(m_center - half, 1)
        return np.arange(m_lo, m_lo + self.mode_count)

    def mode_wavenumbers(self):
        return self.mode_numbers() * math.pi / self.length

    def mode_frequencies(self):
        return self.dispersion(self.mode_wavenumbers())

    def mode_detunings(self):
        return self.mode_frequencies() - self.center_frequency

    def mode_couplings(self):
        """G_k = sqrt(kappa v_g Omega_k / (2 omega L)), the Ohmic-weighted
        coupling of each standing mode to an attached resonator."""
        omega_k = self.mode_frequencies()
        return np.sqrt(
            self.decay_rate * self.group_velocity * omega_k
            / (2.0 * self.center_frequency * self.length)
        )

    def far_port_signs(self):
        """(-1)^m parity factor of each kept mode at the far port."""
        return np.where(self.mode_numbers() % 2 == 0, 1.0, -1.0)


@dataclass(frozen=True)
class NodeSpec:
    """One network node: a qubit plus its attached transfer resonators.

    ``resonators`` maps coupler ids to side tags ('L'/'R' on linear
    interior nodes, spoke ids on the star emitter, '.' otherwise).
    """

    label: str
    kind: NodeKind
    qubit_detuning: float = 0.0
    resonators: tuple[tuple[str, str], ...] = ()


@dataclass(frozen=True)
class NetworkSpec:
    """Immutable network description consumed by the dynamics engine.

    ``links`` holds (waveguide, near coupler id, far coupler id) triples;
    the near port couples +G_k, the far port (-1)^m G_k.
    """

    topology: Topology
    nodes: tuple[NodeSpec, ...]
    links: tuple[tuple[WaveguideSpec, str, str], ...]

    def __post_init__(self):
        seen = set()
        for node in self.nodes:
            for res, _side in node.resonators:
                if res in seen:
                    raise DomainError(f"duplicate coupler id {res!r}")
                seen.add(res)
        for _wg, near, far in self.links:
            if near not in seen or far not in seen:
                raise DomainError(f"link references unknown coupler ({near!r}, {far!r})")

    @property
    def qubit_labels(self):
        return tuple(node.label for node in self.nodes)

    @property
    def resonator_labels(self):
        return tuple(res for node in self.nodes for res, _ in node.resonators)

    def qubit_of(self, coupler_id):
        for node in self.nodes:
            if any(res == coupler_id for res, _ in node.resonators):
                return node.label
        raise DomainError(f"unknown coupler id {coupler_id!r}")

    def index_map(self):
        """Bijection from amplitude labels to state-vector slots: qubits
        first, then resonators, then waveguide modes 'wg<i>.m<m>'."""
        labels = list(self.qubit_labels) + list(self.resonator_labels)
        for i, (wg, _near, _far) in enumerate(self.links):
            labels.extend(f"wg{i}.m{m}" for m in wg.mode_numbers())
        return {label: slot for slot, label in enumerate(labels)}

    @property
    def dimension(self):
        return (
            len(self.nodes)
            + len(self.resonator_labels)
            + sum(wg.mode_count for wg, _n, _f in self.links)
        )


def build_linear(n_nodes, waveguide, kappa=None, omega=None):
    """Chain of ``n_nodes`` qubit-resonator nodes joined by ``n_nodes - 1``
    identical waveguides.

    End nodes carry one transfer resonator, interior nodes two (sides L
    and R).  Waveguide i runs from node i's R resonator (near port) to
    node i+1's L resonator (far port).
    """
    if n_nodes < 2:
        raise DomainError(f"a chain needs at least 2 nodes, got {n_nodes}")
    waveguide = _override(waveguide, kappa, omega)
    nodes = []
    for i in range(1, n_nodes + 1):
        sides = []
        if i > 1:
            sides.append((f"c{i}L", "L"))
        if i < n_nodes:
            sides.append((f"c{i}R" if 1 < i < n_nodes else f"c{i}", "R"))
        if i == 1:
            sides = [(f"c{i}", "R")]
        elif i == n_nodes:
            sides = [(f"c{i}", "L")]
        else:
            sides = [(f"c{i}L", "L"), (f"c{i}R", "R")]
        nodes.append(NodeSpec(f"q{i}", NodeKind.QUBIT_RESONATOR, resonators=tuple(sides)))
    links = []
    for i in range(1, n_nodes):
        near = f"c{i}" if i == 1 else f"c{i}R"
        far = f"c{i + 1}" if i + 1 == n_nodes else f"c{i + 1}L"
        links.append((waveguide, near, far))
    return NetworkSpec(Topology.LINEAR, tuple(nodes), tuple(links))


def build_star(n_spokes, waveguide, kappa=None, omega=None):
    """Central emitter with ``n_spokes`` waveguide spokes, one transfer
    resonator per spoke on the emitter and one leaf node per spoke."""
    if n_spokes < 1:
        raise DomainError(f"a star needs at least 1 spoke, got {n_spokes}")
    waveguide = _override(waveguide, kappa, omega)
    emitter = NodeSpec(
        "qE",
        NodeKind.QUBIT_RESONATOR,
        resonators=tuple((f"cE{i}", str(i)) for i in range(1, n_spokes + 1)),
    )
    leaves = tuple(
        NodeSpec(f"q{i}", NodeKind.QUBIT_RESONATOR, resonators=((f"c{i}", "."),))
        for i in range(1, n_spokes + 1)
    )
    links = tuple(
        (waveguide, f"cE{i}", f"c{i}") for i in range(1, n_spokes + 1)
    )
    return NetworkSpec(Topology.STAR, (emitter,) + leaves, links)


def _override(waveguide, kappa, omega):
    if kappa is not None:
        waveguide = replace(waveguide, decay_rate=kappa)
    if omega is not None:
        waveguide = replace(waveguide, center_frequency=omega)
    return waveguide


def lamb_shift_correction(spec, delta_ls):
    """Shift every qubit detuning by ``delta_ls`` (the waveguide-induced
    frequency renormalization, typically quoted in units of kappa)."""
    nodes = tuple(
        replace(node, qubit_detuning=node.qubit_detuning + delta_ls)
        for node in spec.nodes
    )
    return replace(spec, nodes=nodes)


def propagation_delay(waveguide):
    """Wavepacket propagation time t_d = L / v_g through one link."""
    return waveguide.length / waveguide.group_velocity
