"""Exception hierarchy shared by all fracineq modules."""

from __future__ import annotations


class FracIneqError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FracIneqError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class EmptyIntervalError(DomainError):
    """An integration interval has non-positive length."""


class ConfigError(FracIneqError, ValueError):
    """A configuration object or parameter set failed validation."""


class CertificateError(FracIneqError):
    """A required hypothesis certificate is missing, failed, or refuted."""


class ConvergenceError(FracIneqError):
    """Adaptive quadrature did not converge within its subdivision budget.

    Carries the best available estimate so callers can decide whether to
    proceed with a widened tolerance.
    """

    def __init__(self, message: str, estimate: float, error_bound: float):
        super().__init__(message)
        self.estimate = float(estimate)
        self.error_bound = float(error_bound)
