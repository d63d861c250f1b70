"""Run configuration: JSON parsing, unit conversion, and defaults.

Frequencies are stored in rad/s.  JSON keys carrying a ``_hz`` suffix are
accepted in Hz and multiplied by 2*pi on load, since published device
parameters mix both conventions.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass

from .errors import ConfigError

__all__ = ["RunConfig", "load_config", "config_hash"]

DEFAULT_OMEGA = 2.0 * math.pi * 8.407e9
DEFAULT_KAPPA = 2.0 * math.pi * 50e6

_TOPOLOGIES = ("linear", "star")
_PLANS = ("sequential_w", "bell_endpoint", "even_site_w", "star_w")


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one sweep: network, plan, noise grid, and outputs.

    ``t1_s`` and ``t2_s`` are paired lists (one noise point per index);
    the grid is topologies x kappas x noise points.  Times are seconds,
    frequencies rad/s; ``math.inf`` entries disable a channel.
    """

    topologies: tuple[str, ...] = ("linear",)
    plan: str = ""
    n_qubits: int = 3
    kappas: tuple[float, ...] = (DEFAULT_KAPPA,)
    omega: float = DEFAULT_OMEGA
    mode_count: int = 100
    length_m: float = 5.0
    lamb_shift_fraction: float = 0.0065
    apply_lamb_shift: bool = False
    t1_s: tuple[float, ...] = (math.inf,)
    t2_s: tuple[float, ...] = (math.inf,)
    realizations: int = 1000
    seed: int = 0
    bootstrap_resamples: int = 200
    e3f_restarts: int = 2
    compute_e3f: bool = True
    control_time_factor: float = 1.0
    pulse_samples: int = 1025
    output: str = "sweep.csv"

    def __post_init__(self):
        for topo in self.topologies:
            if topo not in _TOPOLOGIES:
                raise ConfigError(f"unknown topology {topo!r}")
        if self.plan and self.plan not in _PLANS:
            raise ConfigError(f"unknown plan {self.plan!r}")
        if len(self.t1_s) != len(self.t2_s):
            raise ConfigError(
                f"t1_s has {len(self.t1_s)} entries but t2_s has "
                f"{len(self.t2_s)}; the noise lists are paired"
            )
        if self.n_qubits < 2:
            raise ConfigError(f"need at least 2 qubits, got {self.n_qubits}")
        if self.realizations < 1:
            raise ConfigError("realizations must be positive")
        if any(k <= 0 for k in self.kappas):
            raise ConfigError("kappa must be positive")
        if self.mode_count < 1 or self.length_m <= 0 or self.omega <= 0:
            raise ConfigError("invalid network parameters")

    def plan_for(self, topology):
        """Effective plan name: the configured one, or the topology's
        W-state default."""
        if self.plan:
            return self.plan
        return "star_w" if topology == "star" else "sequential_w"


_LIST_FIELDS = {"topologies", "kappas", "t1_s", "t2_s"}
_FLOAT_LISTS = {"kappas", "t1_s", "t2_s"}


def _convert_key(key, value):
    """Apply the _hz convention and map JSON names onto config fields."""
    if key.endswith("_hz"):
        base = key[:-3]
        if isinstance(value, list):
            value = [2.0 * math.pi * float(v) for v in value]
        else:
            value = 2.0 * math.pi * float(value)
        key = {"kappa": "kappas"}.get(base, base)
    elif key == "kappa":
        key = "kappas"
    if key in _LIST_FIELDS and not isinstance(value, list):
        value = [value]
    if key in _FLOAT_LISTS:
        value = tuple(math.inf if v in ("inf", None) else float(v)
                      for v in value)
    elif key == "topologies":
        value = tuple(str(v) for v in value)
    return key, value


def load_config(source, overrides=None):
    """Build a RunConfig from a JSON document (path, file object, or dict).

    ``overrides`` is an optional dict applied after the document, with the
    same key conventions.
    """
    if isinstance(source, dict):
        raw = dict(source)
    else:
        try:
            if hasattr(source, "read"):
                raw = json.load(source)
            else:
                with open(source, "r", encoding="utf-8") as fh:
                    raw = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {source!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON in {source!r}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config document must be a JSON object")
    if overrides:
        raw.update({k: v for k, v in overrides.items() if v is not None})
    fields = {}
    valid = set(RunConfig.__dataclass_fields__)
    for key, value in raw.items():
        key, value = _convert_key(key, value)
        if key not in valid:
            raise ConfigError(f"unknown config key {key!r}")
        fields[key] = value
    try:
        return RunConfig(**fields)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def config_hash(config):
    """Short stable digest of the physical parameter set, for provenance.

    The output path is excluded: it does not affect the results, and two
    sweeps of the same physics must hash identically wherever they land.
    """
    payload = asdict(config)
    payload.pop("output")
    return hashlib.sha256(
        json.dumps(payload, sort_keys=True, default=str).encode()
    ).hexdigest()[:16]
