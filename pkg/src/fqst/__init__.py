"""Fractional quantum state transfer toolkit.

Control synthesis for shaped-photon emission/absorption, exact
single-excitation network dynamics over discretized waveguides, quasistatic
noise ensembles, and W-state entanglement metrics.
"""

from .errors import (
    ConfigError,
    DomainError,
    FqstError,
    InfeasiblePulseError,
    IntegrationError,
)

__version__ = "0.1.0"

__all__ = [
    "FqstError",
    "DomainError",
    "InfeasiblePulseError",
    "IntegrationError",
    "ConfigError",
    "__version__",
]
