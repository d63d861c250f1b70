"""Exception hierarchy shared by all fqst modules."""


class FqstError(Exception):
    """Base class for all package errors."""


class DomainError(FqstError, ValueError):
    """A parameter lies outside the mathematical domain of an operation."""


class InfeasiblePulseError(DomainError):
    """The requested control cannot keep populations physical.

    Carries the violated bound so callers (and the CLI) can report it.
    """

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class IntegrationError(FqstError, RuntimeError):
    """The ODE integrator failed (stiffness, step underflow, norm drift)."""


class ConfigError(FqstError, ValueError):
    """Invalid or inconsistent run configuration."""
