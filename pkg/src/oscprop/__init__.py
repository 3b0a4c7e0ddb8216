"""Closed-form propagators, Charlier transition amplitudes and Cauchy solvers
for forced quantum harmonic oscillators and their diffusion analog.
"""
from .errors import (ConfigError, ConvergenceError, DomainError, OscpropError,
                     QuadratureError, SupportLeakWarning)

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DomainError",
    "OscpropError",
    "QuadratureError",
    "SupportLeakWarning",
    "__version__",
]
