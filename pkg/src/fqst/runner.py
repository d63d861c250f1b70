"""Sweep orchestration: noise-grid experiments over topology, bandwidth,
and coherence times, with resumable deterministic CSV output.

Grid points form a fixed-order work queue; workers are share-nothing
processes and a single writer appends finished rows in grid order, so an
interrupted sweep resumes to a byte-identical file.  ``FQST_THREADS``
caps the worker count.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .config import config_hash
from .dynamics import integrate_full
from .errors import ConfigError, IntegrationError
from .metrics import e3f_mixed, e3f_pure, fidelity_phase_optimized
from .network import (
    WaveguideSpec,
    build_linear,
    build_star,
    lamb_shift_correction,
)
from .noise import NoiseSpec, bootstrap, ensemble_density_matrix, sample_dephasing
from .planner import (
    ScheduleTiming,
    assemble_schedule,
    bell_endpoint_fractions,
    even_site_w_fractions,
    sequential_w_fractions,
    star_w_fractions,
)
from .pulses import sample_control

__all__ = [
    "SWEEP_COLUMNS",
    "GridPoint",
    "sweep_grid",
    "evaluate_point",
    "run_sweep",
    "run_pulse_dump",
    "run_trajectory",
    "run_describe",
    "run_depletion_calibration",
    "worker_count",
]

SWEEP_COLUMNS = (
    "topology", "kappa_rad_s", "T1_s", "T2_s", "realizations",
    "fidelity", "fidelity_std", "e3f", "e3f_std", "phi2", "phi3",
)


def worker_count(n_tasks):
    """Worker cap: FQST_THREADS if set, else the CPU count, never more
    than the number of tasks."""
    env = os.environ.get("FQST_THREADS", "")
    try:
        cap = int(env) if env else (os.cpu_count() or 1)
    except ValueError:
        raise ConfigError(f"FQST_THREADS must be an integer, got {env!r}")
    if cap < 1:
        raise ConfigError(f"FQST_THREADS must be positive, got {cap}")
    return max(1, min(cap, n_tasks))


@dataclass(frozen=True)
class GridPoint:
    topology: str
    kappa: float
    t1: float
    t2: float


def sweep_grid(config):
    """Fixed-order grid: topologies (outer) x kappas x paired noise points."""
    return [
        GridPoint(topo, kappa, t1, t2)
        for topo in config.topologies
        for kappa in config.kappas
        for t1, t2 in zip(config.t1_s, config.t2_s)
    ]


def _build_network(config, topology, kappa):
    wg = WaveguideSpec(config.length_m, config.mode_count, config.omega, kappa)
    if topology == "star":
        spec = build_star(config.n_qubits, wg)
    else:
        spec = build_linear(config.n_qubits, wg)
    if config.apply_lamb_shift:
        spec = lamb_shift_correction(spec, config.lamb_shift_fraction * kappa)
    return spec


def _build_plan(config, topology):
    name = config.plan_for(topology)
    if name == "star_w" and topology != "star":
        raise ConfigError("star_w plans need a star topology")
    if name != "star_w" and topology == "star":
        raise ConfigError(f"{name} plans need a linear topology")
    if name == "sequential_w":
        return sequential_w_fractions(config.n_qubits)
    if name == "bell_endpoint":
        return bell_endpoint_fractions(config.n_qubits)
    if name == "even_site_w":
        return even_site_w_fractions(config.n_qubits)
    return star_w_fractions(config.n_qubits)


def _timing(config, topology, kappa, n_hops):
    if config.control_time_factor == 1.0:
        return ScheduleTiming(samples=config.pulse_samples)
    base = 14.0 / kappa if topology == "star" else 17.5 * n_hops / kappa
    return ScheduleTiming(control_time=config.control_time_factor * base,
                          samples=config.pulse_samples)


def _target_rows(spec, topology):
    """Indices and labels of the qubits carrying the target state.  The
    full-model index map places qubits first, in label order."""
    labels = spec.qubit_labels
    if topology == "star":
        return list(range(1, len(labels))), labels[1:]
    return list(range(len(labels))), labels


def evaluate_point(config, point):
    """Run one grid point end to end and return the output row values."""
    spec = _build_network(config, point.topology, point.kappa)
    plan = _build_plan(config, point.topology)
    timing = _timing(config, point.topology, point.kappa, len(plan.fractions))
    schedule = assemble_schedule(plan, spec, timing)
    noise = NoiseSpec(t1=point.t1, t2=point.t2,
                      realizations=config.realizations, seed=config.seed,
                      bootstrap_resamples=config.bootstrap_resamples)
    shifts = sample_dephasing(noise, len(spec.qubit_labels))
    result = integrate_full(spec, schedule, noise_shifts=shifts)
    nq = len(spec.qubit_labels)
    amps = result.states[-1][:nq, :]
    dwell = result.dwell[-1]
    rows, labels = _target_rows(spec, point.topology)
    sel_amps = amps[rows]
    sel_dwell = dwell[rows]
    rho = ensemble_density_matrix(sel_amps, sel_dwell, noise, labels)

    fidelity, phi2, phi3 = fidelity_phase_optimized(rho)
    damped = sel_amps * np.exp(-sel_dwell / (2.0 * point.t1)) \
        if not math.isinf(point.t1) else sel_amps
    target = np.array([1.0, np.exp(1j * phi2), np.exp(1j * phi3)]) / math.sqrt(3)
    per_real_f = np.abs(target.conj() @ damped) ** 2
    if config.realizations > 1:
        _, fidelity_std = bootstrap(per_real_f, config.bootstrap_resamples,
                                    config.seed)
    else:
        fidelity_std = 0.0

    if config.compute_e3f:
        e3f = e3f_mixed(rho, restarts=config.e3f_restarts, seed=config.seed)
        # spread proxy: treat each realization's relaxed state as pure
        # (vacuum weight coherent) and bootstrap the per-realization values
        vac = np.sqrt(np.clip(1.0 - np.sum(np.abs(damped) ** 2, axis=0),
                              0.0, 1.0))
        per_real_e = np.array([
            e3f_pure(np.concatenate(([vac[r]], damped[:, r])))
            for r in range(damped.shape[1])
        ])
        if config.realizations > 1:
            _, e3f_std = bootstrap(per_real_e, config.bootstrap_resamples,
                                   config.seed)
        else:
            e3f_std = 0.0
    else:
        e3f, e3f_std = math.nan, math.nan

    return {
        "topology": point.topology,
        "kappa_rad_s": point.kappa,
        "T1_s": point.t1,
        "T2_s": point.t2,
        "realizations": config.realizations,
        "fidelity": fidelity,
        "fidelity_std": fidelity_std,
        "e3f": e3f,
        "e3f_std": e3f_std,
        "phi2": phi2,
        "phi3": phi3,
    }


def _fmt(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isinf(v):
        return "inf"
    if math.isnan(v):
        return "nan"
    return format(v, ".12g")


def _row_key(values):
    return ",".join(_fmt(values[c]) for c in SWEEP_COLUMNS[:5])


def _point_key(config, point):
    return ",".join((
        point.topology, _fmt(point.kappa), _fmt(point.t1), _fmt(point.t2),
        str(config.realizations),
    ))


def _existing_keys(path):
    if not os.path.exists(path):
        return set()
    keys = set()
    with open(path, "r", encoding="utf-8", newline="") as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            cells = line.split(",")
            if cells[0] == SWEEP_COLUMNS[0]:
                continue
            keys.add(",".join(cells[:5]))
    return keys


def _evaluate_star(args):
    return evaluate_point(*args)


def run_sweep(config, progress=None):
    """Evaluate every grid point and persist the results CSV.

    Finished points already present in ``config.output`` are skipped and
    the remainder appended in grid order, so identical configs always
    produce byte-identical files, interrupted or not.  Returns the list
    of all row dicts (including previously persisted ones re-read is not
    attempted; only newly computed rows are returned).
    """
    grid = sweep_grid(config)
    for topo in config.topologies:
        _build_plan(config, topo)  # fail before any integration
    path = config.output
    done = _existing_keys(path)
    fresh = not os.path.exists(path)
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    pending = [p for p in grid if _point_key(config, p) not in done]
    rows = []
    with open(path, "a", encoding="utf-8", newline="") as fh:
        if fresh:
            fh.write(f"# config={config_hash(config)} seed={config.seed} "
                     f"version=fqst-{__version__}\n")
            fh.write(",".join(SWEEP_COLUMNS) + "\n")
            fh.flush()
        n_workers = worker_count(len(pending)) if pending else 1
        if n_workers > 1:
            with ProcessPoolExecutor(max_workers=n_workers) as pool:
                results = pool.map(_evaluate_star,
                                   [(config, p) for p in pending])
                for point, row in zip(pending, results):
                    rows.append(row)
                    fh.write(",".join(_fmt(row[c]) for c in SWEEP_COLUMNS) + "\n")
                    fh.flush()
                    if progress:
                        progress(point, row)
        else:
            for point in pending:
                row = evaluate_point(config, point)
                rows.append(row)
                fh.write(",".join(_fmt(row[c]) for c in SWEEP_COLUMNS) + "\n")
                fh.flush()
                if progress:
                    progress(point, row)
    return rows


def run_pulse_dump(spec, stream, n_samples=1025, window=None):
    """Write a sampled control as CSV ``t_seconds,value_rad_per_s``."""
    samples = sample_control(spec, n_samples=n_samples, window=window)
    stream.write("t_seconds,value_rad_per_s\n")
    for t, v in zip(samples.times, samples.values):
        stream.write(f"{_fmt(t)},{_fmt(float(np.real(v)))}\n")
    return samples


def run_trajectory(config, stream, n_checkpoints=201):
    """Integrate the first grid point without noise and dump checkpointed
    amplitudes as CSV ``t,label,re,im``."""
    grid = sweep_grid(config)
    point = grid[0]
    spec = _build_network(config, point.topology, point.kappa)
    plan = _build_plan(config, point.topology)
    timing = _timing(config, point.topology, point.kappa, len(plan.fractions))
    schedule = assemble_schedule(plan, spec, timing)
    checkpoints = np.linspace(schedule.start,
                              schedule.start + schedule.duration,
                              n_checkpoints)
    result = integrate_full(spec, schedule, checkpoints=checkpoints)
    labels = spec.qubit_labels + spec.resonator_labels
    index = spec.index_map()
    stream.write("t,label,re,im\n")
    for i, t in enumerate(result.times):
        for label in labels:
            amp = result.states[i][index[label], 0]
            stream.write(f"{_fmt(t)},{label},{_fmt(amp.real)},{_fmt(amp.imag)}\n")


def run_describe(config, stream):
    """Dump the basis index map and mode table of the configured network."""
    point = sweep_grid(config)[0]
    spec = _build_network(config, point.topology, point.kappa)
    index = spec.index_map()
    stream.write("index,label,kind,mode_number,detuning_rad_s,coupling_rad_s\n")
    mode_rows = {}
    for li, (wg, _near, _far) in enumerate(spec.links):
        detunings = wg.mode_detunings()
        couplings = wg.mode_couplings()
        for j, m in enumerate(wg.mode_numbers()):
            mode_rows[f"wg{li}.m{m}"] = (m, detunings[j], couplings[j])
    qubit_detunings = {n.label: n.qubit_detuning for n in spec.nodes}
    for label, i in sorted(index.items(), key=lambda kv: kv[1]):
        if label in mode_rows:
            m, det, g = mode_rows[label]
            stream.write(f"{i},{label},mode,{m},{_fmt(det)},{_fmt(g)}\n")
        elif label in qubit_detunings:
            stream.write(f"{i},{label},qubit,,{_fmt(qubit_detunings[label])},\n")
        else:
            stream.write(f"{i},{label},resonator,,,\n")


@dataclass(frozen=True)
class CalibrationResult:
    detuning: float
    detuning_over_kappa: float
    detunings: np.ndarray
    emitted_fractions: np.ndarray


def run_depletion_calibration(config, span=0.02, n_scan=33, window_factor=24.0,
                              coupling_scale=1.0):
    """Estimate the waveguide-induced qubit frequency shift on a two-node
    network.

    Scans a static qubit detuning over ``span``*kappa during a full (n=1)
    emission and returns the detuning that maximizes the emitted fraction,
    refined by a parabolic fit around the scan maximum.  The fraction is
    read out just before the wavepacket's first round trip returns to the
    emitter, so reflections off the far (idle) node do not bias the scan.
    """
    from dataclasses import replace

    from .dynamics import Schedule
    from .network import propagation_delay
    from .pulses import ControlSamples, sech_coupling

    kappa = config.kappas[0]
    wg = WaveguideSpec(config.length_m, config.mode_count, config.omega, kappa)
    base = build_linear(2, wg)
    t_d = propagation_delay(wg)
    half = window_factor / (2.0 * kappa)
    t = np.linspace(0.0, 2.0 * half, config.pulse_samples)
    emit = ControlSamples(t, coupling_scale * sech_coupling(t - half, 1.0, kappa))
    schedule = Schedule(((base.links[0][1], emit),), duration=float(t[-1]))
    t_meas = min(2.0 * half, half + 1.9 * t_d)
    detunings = np.linspace(-span, span, n_scan) * kappa
    fractions = np.empty(n_scan)
    index = base.index_map()
    i_q, i_r = index["q1"], index[base.links[0][1]]
    for i, delta in enumerate(detunings):
        nodes = (replace(base.nodes[0], qubit_detuning=float(delta)),
                 base.nodes[1])
        spec = replace(base, nodes=nodes)
        result = integrate_full(spec, schedule, t_span=(0.0, t_meas),
                                checkpoints=np.array([t_meas]))
        final = result.states[-1][:, 0]
        fractions[i] = 1.0 - abs(final[i_q]) ** 2 - abs(final[i_r]) ** 2
    if np.ptp(fractions) < 1e-9:
        raise IntegrationError(
            "flat depletion scan: emitted fraction does not depend on the "
            "detuning (is the coupling zero?)"
        )
    k = int(np.argmax(fractions))
    if 0 < k < n_scan - 1:
        # parabola through the three points around the discrete maximum
        y0, y1, y2 = fractions[k - 1: k + 2]
        denom = y0 - 2.0 * y1 + y2
        shift = 0.5 * (y0 - y2) / denom if denom != 0.0 else 0.0
        step = detunings[1] - detunings[0]
        best = detunings[k] + shift * step
    else:
        best = detunings[k]
    return CalibrationResult(float(best), float(best / kappa),
                             detunings, fractions)
