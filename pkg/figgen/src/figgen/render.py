"""Panel rendering from sweep and pulse CSVs.

Two sweep panels (log-infidelity and entanglement-of-formation gap versus
T2, one error-barred series per topology/bandwidth group) and a pulse
overlay panel.  Rendering is deterministic: groups are sorted, styles
assigned by group rank, and no run-dependent text is drawn.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd

__all__ = [
    "E3F_IDEAL",
    "GAP_FLOOR",
    "Panel",
    "FigureSpec",
    "SchemaError",
    "load_sweep",
    "load_pulse",
    "render",
]

#: Entanglement of formation of the ideal three-qubit W state, in bits.
#: Computed at double precision rather than quoted to three digits, so the
#: gap axis has no artificial floor.
E3F_IDEAL = math.log2(3.0) - 2.0 / 3.0

#: Gap values below this are clipped to it instead of feeding log(<=0).
GAP_FLOOR = 1e-6

SWEEP_COLUMNS = (
    "topology", "kappa_rad_s", "T1_s", "T2_s", "realizations",
    "fidelity", "fidelity_std", "e3f", "e3f_std", "phi2", "phi3",
)
PULSE_COLUMNS = ("t_seconds", "value_rad_per_s")

_COLORS = ("#2ca02c", "#9467bd", "#1f77b4", "#d62728",
           "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f")
_MARKERS = ("o", "s", "^", "v", "D", "P", "X", "*")


class SchemaError(Exception):
    """Input CSV does not match the expected schema."""

    def __init__(self, path, missing):
        self.path = str(path)
        self.missing = tuple(missing)
        super().__init__(
            f"{path}: missing required columns: {', '.join(self.missing)}"
        )


class Panel(enum.Enum):
    INFIDELITY_VS_T2 = "infidelity"
    E3F_GAP_VS_T2 = "e3f_gap"
    PULSE_SHAPES = "pulses"


@dataclass(frozen=True)
class FigureSpec:
    """One figure: input CSV path(s), panel choice, output image path,
    and the columns defining a series."""

    inputs: tuple[str, ...]
    panel: Panel
    output: str
    series_keys: tuple[str, ...] = ("topology", "kappa_rad_s")

    def __post_init__(self):
        if not self.inputs:
            raise ValueError("at least one input CSV is required")


def _check_columns(path, frame, required):
    missing = [c for c in required if c not in frame.columns]
    if missing:
        raise SchemaError(path, missing)


def load_sweep(paths):
    """Read and concatenate sweep CSVs, validating the schema of each."""
    frames = []
    for path in paths:
        frame = pd.read_csv(path, comment="#")
        _check_columns(path, frame, SWEEP_COLUMNS)
        if frame.empty:
            raise SchemaError(path, ("<no data rows>",))
        frames.append(frame)
    return pd.concat(frames, ignore_index=True)


def load_pulse(path):
    """Read one pulse dump CSV."""
    frame = pd.read_csv(path, comment="#")
    _check_columns(path, frame, PULSE_COLUMNS)
    if frame.empty:
        raise SchemaError(path, ("<no data rows>",))
    return frame


def _series_label(keys, values):
    parts = []
    for key, value in zip(keys, values if isinstance(values, tuple) else (values,)):
        if key == "kappa_rad_s":
            parts.append(f"kappa = 2pi x {value / (2 * math.pi * 1e6):g} MHz")
        else:
            parts.append(str(value))
    return ", ".join(parts)


def _sweep_panel(spec, value_fn, err_fn, ylabel):
    data = load_sweep(spec.inputs)
    missing_keys = [k for k in spec.series_keys if k not in data.columns]
    if missing_keys:
        raise SchemaError(spec.inputs[0], missing_keys)
    groups = sorted(data.groupby(list(spec.series_keys)).groups)
    if not groups:
        raise SchemaError(spec.inputs[0], ("<no series groups>",))
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    grouped = data.groupby(list(spec.series_keys))
    for rank, key in enumerate(groups):
        rows = grouped.get_group(key).sort_values("T2_s")
        t2_us = rows["T2_s"].to_numpy() * 1e6
        y = value_fn(rows)
        yerr = err_fn(rows)
        ax.errorbar(t2_us, y, yerr=yerr, capsize=2.5,
                    color=_COLORS[rank % len(_COLORS)],
                    marker=_MARKERS[rank % len(_MARKERS)],
                    markersize=4, linewidth=1.2,
                    label=_series_label(spec.series_keys, key))
    ax.set_yscale("log")
    ax.set_xlabel(r"$T_2$ [$\mu$s]")
    ax.set_ylabel(ylabel)
    ax.legend(fontsize=7, frameon=False)
    ax.grid(True, which="both", alpha=0.25, linewidth=0.4)
    fig.tight_layout()
    return fig


def _infidelity(rows):
    return np.maximum(1.0 - rows["fidelity"].to_numpy(), GAP_FLOOR)


def _e3f_gap(rows):
    return np.maximum(E3F_IDEAL - rows["e3f"].to_numpy(), GAP_FLOOR)


def _pulse_panel(spec):
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    for rank, path in enumerate(spec.inputs):
        frame = load_pulse(path)
        t = frame["t_seconds"].to_numpy()
        v = frame["value_rad_per_s"].to_numpy()
        ax.plot(t * 1e9, v / (2.0 * math.pi * 1e6),
                color=_COLORS[rank % len(_COLORS)], linewidth=1.2,
                label=Path(path).stem)
    ax.set_xlabel("t [ns]")
    ax.set_ylabel(r"$g(t)/2\pi$ [MHz]")
    ax.legend(fontsize=7, frameon=False)
    ax.grid(True, alpha=0.25, linewidth=0.4)
    fig.tight_layout()
    return fig


def render(spec):
    """Render one panel to ``spec.output`` and return the figure."""
    if spec.panel is Panel.INFIDELITY_VS_T2:
        fig = _sweep_panel(
            spec, _infidelity,
            lambda rows: rows["fidelity_std"].to_numpy(),
            r"$1 - F$")
    elif spec.panel is Panel.E3F_GAP_VS_T2:
        fig = _sweep_panel(
            spec, _e3f_gap,
            lambda rows: rows["e3f_std"].to_numpy(),
            r"$E_{3F}(W_3) - E_{3F}$ [bits]")
    else:
        fig = _pulse_panel(spec)
    fig.savefig(spec.output, dpi=180)
    plt.close(fig)
    return spec.output
