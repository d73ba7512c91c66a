"""Scalar coefficient arithmetic: exact rationals with float degradation.

Every real constant of the theory (structure coefficients, curvature,
radius, solver parameters) is held as an int, a Fraction, or a float.
Python's numeric tower already gives the degradation rule we want:
exact op exact stays exact, anything touching a float becomes a float.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

Scalar = Union[int, Fraction, float]

#: Default absolute tolerance separating identities from float noise.
DEFAULT_TOL = 1e-9


def is_exact(x: Scalar) -> bool:
    """True when ``x`` carries no rounding error (int or Fraction)."""
    return not isinstance(x, float)


def scalar_eq(x: Scalar, y: Scalar, tol: float = DEFAULT_TOL) -> bool:
    """Equality, exact when both sides are exact, else within ``tol``."""
    if is_exact(x) and is_exact(y):
        return x == y
    return abs(float(x) - float(y)) <= tol


def is_zero(x: Scalar, tol: float = DEFAULT_TOL) -> bool:
    if is_exact(x):
        return x == 0
    return abs(x) <= tol


def inv(x: Scalar) -> Scalar:
    """Multiplicative inverse that keeps rationals exact (1/int is a float)."""
    if x == 0:
        raise ZeroDivisionError("scalar inverse of zero")
    if is_exact(x):
        return Fraction(1) / Fraction(x)
    return 1.0 / x


def exact_sqrt(x: Scalar) -> Scalar:
    """Square root that stays exact for perfect rational squares."""
    if isinstance(x, float):
        return math.sqrt(x)
    if x < 0:
        raise ValueError("square root of negative value")
    frac = Fraction(x)
    num, den = frac.numerator, frac.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        root = Fraction(rn, rd)
        return int(root) if root.denominator == 1 else root
    return math.sqrt(num / den)


def simplify(x: Scalar) -> Scalar:
    """Collapse integral Fractions to plain ints; pass everything else through."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def parse_scalar(value) -> Scalar:
    """Decode a config value: int stays exact, float stays float, str parses exactly.

    Strings such as ``"1/3"`` or ``"-2/5"`` give exact rationals, which is the
    only way JSON can transport values like 1/3 without rounding.
    """
    if isinstance(value, bool):
        raise ValueError(f"boolean is not a scalar: {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        return value
    if isinstance(value, Fraction):
        return simplify(value)
    if isinstance(value, str):
        try:
            return simplify(Fraction(value))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse scalar string {value!r}") from exc
    raise ValueError(f"cannot interpret scalar: {value!r}")


def encode_scalar(x: Scalar):
    """JSON encoding that round-trips through :func:`parse_scalar`."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return int(x)
        return f"{x.numerator}/{x.denominator}"
    return x
