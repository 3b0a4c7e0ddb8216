"""Exception and warning types shared across the package."""


class OscpropError(Exception):
    """Base class for package errors."""


class DomainError(OscpropError, ValueError):
    """Arguments outside the validity window of a formula (caustics, t <= 0, ...)."""


class QuadratureError(OscpropError, RuntimeError):
    """Adaptive quadrature failed to reach its tolerance.

    Attributes
    ----------
    integral : str
        Name of the integral that failed.
    estimate : float
        Last error estimate reported by the integrator.
    """

    def __init__(self, integral, estimate, message=""):
        self.integral = integral
        self.estimate = estimate
        text = f"quadrature for '{integral}' did not converge (error estimate {estimate:.3g})"
        if message:
            text += f": {message}"
        super().__init__(text)


class ConvergenceError(OscpropError, RuntimeError):
    """Brute-force quadrature did not settle to the requested tolerance."""

    def __init__(self, message, estimate):
        self.estimate = estimate
        super().__init__(f"{message} (achieved error estimate {estimate:.3g})")


class ConfigError(OscpropError, ValueError):
    """Invalid scenario configuration; `field` names the offending entry."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = ""
        if field:
            where = f"[{field}]"
            if line is not None:
                where += f" (line {line})"
            where += " "
        super().__init__(where + message)


class SupportLeakWarning(UserWarning):
    """A sampled wave does not decay to negligible values at the grid edges."""
