"""Figure generation for sweep and pulse CSVs."""

from .render import (
    E3F_IDEAL,
    GAP_FLOOR,
    FigureSpec,
    Panel,
    SchemaError,
    load_pulse,
    load_sweep,
    render,
)

__all__ = [
    "E3F_IDEAL",
    "GAP_FLOOR",
    "FigureSpec",
    "Panel",
    "SchemaError",
    "load_pulse",
    "load_sweep",
    "render",
]

__version__ = "0.1.0"
