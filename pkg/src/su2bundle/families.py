"""Constructive solvers for the special structure families.

Each solver validates its constraint surface with named equations and
derives the remaining coefficients; violations raise ConstraintViolation
carrying the equation label so the CLI can report exactly what failed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import ConstraintViolation
from .frames import GeometryParams
from .scalars import DEFAULT_TOL, Scalar, exact_sqrt, is_exact, is_zero, scalar_eq
from .su2core import NaturalStructure

# Equation labels for the two named systems.
GENERAL_NEARLY_HYPO_EQS = (
    "a1^2 + a3^2 - a0*a2 = a3*p",
    "b1^2 + b3^2 - b0*b2 = a3*p",
    "b0^2 - 2*s2*K*b0*b2 + s2^2*K^2*b2^2 + 4*s2*K*b1^2 = 36*s2^2*a3*p^3",
    "a0*b2 + a2*b0 - 2*a1*b1 - 2*a3*b3 = 0",
    "a0*b1 - s2*K*a2*b1 + s2*K*a1*b2 - a1*b0 = 0",
)
TYPE2_HYPO_EQS = (
    "b1^2 - b0*b2 = a3^2 - a0*a2",
    "c1^2 - c0*c2 = a3^2 - a0*a2",
    "b0*a2 + b2*a0 = 0",
    "c0*a2 + c2*a0 = 0",
    "b0*c2 + b2*c0 - 2*b1*c1 = 0",
)
LABEL_TYPE2_K0 = "K = 9*s2*p^2 > 0 (type II hypo has no solutions at K = 0)"


def _third(x: Scalar) -> Scalar:
    return Fraction(1, 3) * x if is_exact(x) else x / 3.0


def _ratio(num: Scalar, den: Scalar) -> Scalar:
    if is_exact(num) and is_exact(den):
        return Fraction(num) / Fraction(den)
    return float(num) / float(den)


@dataclass(frozen=True)
class TypeIParams:
    """Point on the constraint surface B^2 (1+A^2)^2 (X^2+Y^2) = 1, B > 0."""

    X: Scalar
    Y: Scalar
    A: Scalar
    B: Scalar

    def validate(self, tol: float = DEFAULT_TOL) -> None:
        if not self.B > 0:
            raise ConstraintViolation("B > 0")
        lhs = self.B ** 2 * (1 + self.A ** 2) ** 2 * (self.X ** 2 + self.Y ** 2)
        if not scalar_eq(lhs, 1, tol):
            raise ConstraintViolation(
                "B^2*(1 + A^2)^2*(X^2 + Y^2) = 1",
                f"surface equation left side is {float(lhs)!r}",
            )


@dataclass(frozen=True)
class TypeIIParams:
    a0: Scalar
    a2: Scalar
    a3: Scalar
    p: Scalar
    b0: Scalar
    sign_b1: int = 1

    def __post_init__(self):
        if self.sign_b1 not in (1, -1):
            raise ConstraintViolation("sign_b1 in {+1, -1}")


def type1_from_parameters(tp: TypeIParams, geom: Optional[GeometryParams] = None,
                          tol: float = DEFAULT_TOL) -> NaturalStructure:
    """Structure with omega1 = dtheta from a surface point (X, Y, A, B)."""
    tp.validate(tol)
    X, Y, A, B = tp.X, tp.Y, tp.A, tp.B
    one_a2 = 1 + A * A
    b0 = (1 - A * A) * B * B * X + 2 * A * B * B * Y
    b1 = one_a2 * B * (Y - A * X)
    b2 = -(one_a2 ** 2) * X
    c0 = (1 - A * A) * B * B * Y - 2 * A * B * B * X
    c1 = -one_a2 * B * (X + A * Y)
    c2 = -(one_a2 ** 2) * Y
    geom = geom or GeometryParams(K=0, s2=1)
    return NaturalStructure(p=1, a=(0, 0, 0, 1), b=(b0, b1, b2, 0), c=(c0, c1, c2, 0), geom=geom)


def type1_nearly_hypo(b0: Scalar, b1: Scalar, b2: Scalar, geom: GeometryParams,
                      tol: float = DEFAULT_TOL) -> NaturalStructure:
    """Nearly-hypo (hence double-hypo) structure with omega1 = dtheta, p = 1."""
    K, s2 = geom.K, geom.s2
    if not scalar_eq(b1 * b1 - b0 * b2, 1, tol):
        raise ConstraintViolation("b1^2 - b0*b2 = 1")
    lhs = (b0 + s2 * K * b2) ** 2 + 4 * s2 * K
    if not scalar_eq(lhs, 36 * s2 * s2, tol):
        raise ConstraintViolation(
            "(b0 + s2*K*b2)^2 + 4*s2*K = 36*s2^2",
            f"left side {float(lhs)!r}, right side {float(36 * s2 * s2)!r}",
        )
    bound = -_ratio(b0 * b0, s2 * (1 + b1 * b1))
    if not K > bound:
        raise ConstraintViolation("K > -b0^2/(s2*(1 + b1^2))")
    c0 = _third(K * b1)
    c1 = _ratio(s2 * K * b2 - b0, 6 * s2)
    c2 = -_ratio(b1, 3 * s2)
    return NaturalStructure(p=1, a=(0, 0, 0, 1), b=(b0, b1, b2, 0), c=(c0, c1, c2, 0), geom=geom)


def sasaki_einstein_family(s2: Scalar, b2: Scalar, sign_q: int = 1,
                           tol: float = DEFAULT_TOL) -> NaturalStructure:
    """Sasaki-Einstein structure at curvature K = 9 s2, one for each b2 in range.

    Q = sign_q * sqrt(1 - 9 s2^2 b2^2) stays exact whenever the radicand is a
    perfect rational square, which keeps the conical lift exactly integrable.
    """
    if not s2 > 0:
        raise ConstraintViolation("s2 > 0")
    if sign_q not in (1, -1):
        raise ConstraintViolation("sign_q in {+1, -1}")
    radicand = 1 - 9 * s2 * s2 * b2 * b2
    if (is_exact(radicand) and radicand < 0) or (not is_exact(radicand) and radicand < -tol):
        raise ConstraintViolation("|b2| <= 1/(3*s2)", "Q would be imaginary")
    if not is_exact(radicand) and radicand < 0:
        radicand = 0.0
    Q = sign_q * exact_sqrt(radicand)
    K = 9 * s2
    b = (-9 * s2 * s2 * b2, Q, b2, 0)
    c = (3 * s2 * Q, 3 * s2 * b2, -_ratio(Q, 3 * s2), 0)
    return NaturalStructure(p=1, a=(0, 0, 0, 1), b=b, c=c, geom=GeometryParams(K=K, s2=s2))


def type2_double_hypo(tp: TypeIIParams, expected_s2: Optional[Scalar] = None,
                      tol: float = DEFAULT_TOL) -> NaturalStructure:
    """Double-hypo structure with closed omega1 = a0 alpha0 + a2 alpha2 + a3 dtheta.

    The radius is derived: s2^2 = a0/(9 a2 p^2), K = a0/(a2 s2) = 9 s2 p^2.
    A user-supplied s2 is cross-checked and rejected on mismatch.
    """
    a0, a2, a3, p, b0 = tp.a0, tp.a2, tp.a3, tp.p, tp.b0
    if p == 0:
        raise ConstraintViolation("p != 0")
    if a2 == 0:
        raise ConstraintViolation("a2 != 0")
    if a0 == 0:
        raise ConstraintViolation(LABEL_TYPE2_K0)
    if not a0 * a2 > 0:
        raise ConstraintViolation("a0*a2 > 0")
    if not a3 * p > 0:
        raise ConstraintViolation("a3*p > 0")
    if not scalar_eq(a3 * a3 - a0 * a2, a3 * p, tol):
        raise ConstraintViolation("a3^2 - a0*a2 = a3*p")
    s4 = _ratio(a0, 9 * a2 * p * p)
    s2 = exact_sqrt(s4)
    if expected_s2 is not None and not scalar_eq(expected_s2, s2, max(tol, 1e-7)):
        raise ConstraintViolation(
            "s2^2 = a0/(9*a2*p^2)",
            f"supplied s2 {float(expected_s2)!r} does not match derived {float(s2)!r}",
        )
    K = _ratio(a0, a2 * s2)
    b2 = -_ratio(a2 * b0, a0)
    b1_sq = a3 * p - _ratio(a2 * b0 * b0, a0)
    if (is_exact(b1_sq) and b1_sq < 0) or (not is_exact(b1_sq) and b1_sq < -tol):
        raise ConstraintViolation("b1^2 = a3*p - a2*b0^2/a0 >= 0")
    if not is_exact(b1_sq) and b1_sq < 0:
        b1_sq = 0.0
    b1 = tp.sign_b1 * exact_sqrt(b1_sq)
    c0 = _ratio(K * b1, 3 * p)
    c1 = _ratio(s2 * K * b2 - b0, 6 * s2 * p)
    c2 = -_ratio(b1, 3 * s2 * p)
    geom = GeometryParams(K=K, s2=s2)
    return NaturalStructure(p=p, a=(a0, 0, a2, a3), b=(b0, b1, b2, 0), c=(c0, c1, c2, 0), geom=geom)


def verify_named_systems(ns: NaturalStructure, tol: float = DEFAULT_TOL) -> dict:
    """Per-equation residuals of the general nearly-hypo and type II hypo systems."""
    a0, a1, a2, a3 = ns.a
    b0, b1, b2, b3 = ns.b
    c0, c1, c2, c3 = ns.c
    p, K, s2 = ns.p, ns.geom.K, ns.geom.s2
    general = {
        GENERAL_NEARLY_HYPO_EQS[0]: a1 * a1 + a3 * a3 - a0 * a2 - a3 * p,
        GENERAL_NEARLY_HYPO_EQS[1]: b1 * b1 + b3 * b3 - b0 * b2 - a3 * p,
        GENERAL_NEARLY_HYPO_EQS[2]: (
            b0 * b0 - 2 * s2 * K * b0 * b2 + s2 * s2 * K * K * b2 * b2
            + 4 * s2 * K * b1 * b1 - 36 * s2 * s2 * a3 * p ** 3
        ),
        GENERAL_NEARLY_HYPO_EQS[3]: a0 * b2 + a2 * b0 - 2 * a1 * b1 - 2 * a3 * b3,
        GENERAL_NEARLY_HYPO_EQS[4]: a0 * b1 - s2 * K * a2 * b1 + s2 * K * a1 * b2 - a1 * b0,
    }
    type2 = {
        TYPE2_HYPO_EQS[0]: b1 * b1 - b0 * b2 - (a3 * a3 - a0 * a2),
        TYPE2_HYPO_EQS[1]: c1 * c1 - c0 * c2 - (a3 * a3 - a0 * a2),
        TYPE2_HYPO_EQS[2]: b0 * a2 + b2 * a0,
        TYPE2_HYPO_EQS[3]: c0 * a2 + c2 * a0,
        TYPE2_HYPO_EQS[4]: b0 * c2 + b2 * c0 - 2 * b1 * c1,
    }
    w2w3 = ns.omega(2).wedge(ns.omega(3)).max_abs()
    general_ok = all(is_zero(v, tol) for v in general.values())
    report = {
        "general_nearly_hypo": {k: abs(float(v)) for k, v in general.items()},
        "type2_hypo": {k: abs(float(v)) for k, v in type2.items()},
        "omega2^omega3": w2w3,
        "general_satisfied": general_ok,
    }
    if general_ok and not w2w3 <= max(tol, 1e-12):
        raise ArithmeticError("omega2^omega3 should vanish whenever the five equations hold")
    return report
