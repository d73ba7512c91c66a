"""Dense polynomials in the deformation parameter t.

Closed-form evolution trajectories have degree at most 3, so a plain
coefficient tuple is the right representation. Trailing zero coefficients
are trimmed; the zero polynomial has an empty tuple and degree -inf.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .scalars import Scalar, is_exact

NEG_INF = float("-inf")


def _trim(coeffs: Iterable[Scalar]) -> tuple:
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class Poly:
    """Polynomial in t with Scalar coefficients, ascending powers."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def const(cls, c: Scalar) -> "Poly":
        return cls((c,))

    @classmethod
    def t(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def lift(cls, value: Union[Scalar, "Poly"]) -> "Poly":
        return value if isinstance(value, Poly) else cls.const(value)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.coeffs)

    def constant_value(self) -> Scalar:
        if not self.is_constant():
            raise ValueError(f"polynomial of degree {self.degree} is not constant")
        return self.coeffs[0] if self.coeffs else 0

    def max_abs(self) -> float:
        return max((abs(float(c)) for c in self.coeffs), default=0.0)

    def __call__(self, t: Scalar) -> Scalar:
        acc: Scalar = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        other = Poly.lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0] * (n - len(other.coeffs))
        return Poly(tuple(x + y for x, y in zip(a, b)))

    def __radd__(self, other) -> "Poly":
        return self + Poly.lift(other)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-Poly.lift(other))

    def __mul__(self, other: Union[Scalar, "Poly"]) -> "Poly":
        if not isinstance(other, Poly):
            return Poly(tuple(c * other for c in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(tuple(out))

    def __rmul__(self, other) -> "Poly":
        return self * other

    def deriv(self) -> "Poly":
        return Poly(tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1))

    def close_to(self, other: "Poly", tol: float) -> bool:
        return (self - Poly.lift(other)).max_abs() <= tol
