"""Exceptions shared across the package."""
from __future__ import annotations


class ConstraintViolation(Exception):
    """A named algebraic constraint failed; carries the equation label.

    The label is the equation itself, e.g. ``"b1^2 - b0*b2 = 1"``, so that
    reports and exit diagnostics name exactly what was violated.
    """

    def __init__(self, label: str, message: str | None = None):
        self.label = label
        self.message = message or f"constraint violated: {label}"
        super().__init__(self.message)


class SpanError(ValueError):
    """A form lies outside the invariant span; carries the residual norm."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"form outside the invariant span (residual {residual!r})")
