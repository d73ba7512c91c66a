"""Invariant-form calculus on the total space of the tangent sphere bundle.

The five named generators theta, alpha0, alpha1, alpha2, dtheta span, together
with their wedge products, a finite monomial basis that is closed under the
exterior derivative when the base 3-manifold has constant sectional curvature.
Every monomial has the canonical shape

    dt^d ∧ theta^t ∧ base,   d, t in {0, 1},
    base in {1, alpha0, alpha1, alpha2, dtheta, e1234}.

Coefficients are polynomials in t, so the same machinery serves both the
static 5-dimensional calculus and the product space with a time axis.
The derivative is defined by structure-equation rewriting:

    d(theta)  = dtheta
    d(alpha0) = (1/s^2) theta ∧ alpha1
    d(alpha1) = (2/s^2) theta ∧ alpha2 - 2K theta ∧ alpha0
    d(alpha2) = -K theta ∧ alpha1
    d(dtheta) = 0
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Sequence, Union

from .errors import SpanError
from .exterior import KForm, wedge
from .poly import Poly
from .scalars import DEFAULT_TOL, Scalar, exact_sqrt, is_exact

Mono = tuple  # (dt_flag, theta_flag, base_name)

BASES = ("1", "a0", "a1", "a2", "dth", "E")
BASE_GRADE = {"1": 0, "a0": 2, "a1": 2, "a2": 2, "dth": 2, "E": 4}

# Wedge table on the base 2-forms; absent pairs vanish.
_BASE_WEDGE = {
    ("a0", "a2"): (1, "E"),
    ("a2", "a0"): (1, "E"),
    ("a1", "a1"): (-2, "E"),
    ("dth", "dth"): (-2, "E"),
}


def mono_grade(m: Mono) -> int:
    return m[0] + m[1] + BASE_GRADE[m[2]]


def mono_label(m: Mono) -> str:
    parts = []
    if m[0]:
        parts.append("dt")
    if m[1]:
        parts.append("th")
    if m[2] != "1" or not parts:
        parts.append(m[2])
    return "^".join(parts)


def _wedge_mono(m1: Mono, m2: Mono) -> Optional[tuple]:
    """Product of canonical monomials: (coefficient, monomial) or None."""
    d1, t1, b1 = m1
    d2, t2, b2 = m2
    if (d1 and d2) or (t1 and t2):
        return None
    if b1 == "1":
        coeff, base = 1, b2
    elif b2 == "1":
        coeff, base = 1, b1
    else:
        hit = _BASE_WEDGE.get((b1, b2))
        if hit is None:
            return None
        coeff, base = hit
    # Moving dt from the second factor across theta of the first is the only
    # odd crossing; the base 2-forms have even degree.
    sign = -1 if (d2 and t1) else 1
    return sign * coeff, (d1 | d2, t1 | t2, base)


@dataclass(frozen=True)
class GeometryParams:
    """Constant sectional curvature K and squared bundle radius s2 > 0.

    The squared radius is the primary field because every structure equation
    is rational in s^2; the radius itself is only needed to expand theta in
    the e-basis and is exact whenever s2 is a perfect rational square.
    """

    K: Scalar
    s2: Scalar

    def __post_init__(self):
        if not self.s2 > 0:
            raise ValueError("s2 must be positive")

    @classmethod
    def from_radius(cls, K: Scalar, s: Scalar) -> "GeometryParams":
        return cls(K, s * s)

    @property
    def r(self) -> Scalar:
        return 2 * self.K

    @property
    def s(self) -> Scalar:
        return exact_sqrt(self.s2)


@dataclass(frozen=True)
class InvariantForm:
    """Form in the invariant span, graded by monomials, Poly-in-t coefficients.

    dim=5 is the static mode (no dt monomials, constant coefficients);
    dim=6 allows dt and genuine t-dependence.
    """

    dim: int
    terms: Dict[Mono, Poly] = field(default_factory=dict)

    def __post_init__(self):
        if self.dim not in (5, 6):
            raise ValueError(f"unsupported dimension {self.dim}")
        clean: Dict[Mono, Poly] = {}
        for mono, coeff in self.terms.items():
            mono = tuple(mono)
            if len(mono) != 3 or mono[2] not in BASES or mono[0] not in (0, 1) or mono[1] not in (0, 1):
                raise ValueError(f"bad monomial {mono}")
            poly = Poly.lift(coeff)
            if self.dim == 5:
                if mono[0]:
                    raise ValueError("dt monomial in 5-dimensional mode")
                if not poly.is_constant():
                    raise ValueError("t-dependent coefficient in 5-dimensional mode")
            if poly.is_zero():
                continue
            clean[mono] = poly
        object.__setattr__(self, "terms", clean)

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, dim: int = 5) -> "InvariantForm":
        return cls(dim, {})

    @classmethod
    def scalar(cls, value: Union[Scalar, Poly], dim: int = 5) -> "InvariantForm":
        return cls(dim, {(0, 0, "1"): Poly.lift(value)})

    @classmethod
    def theta(cls, dim: int = 5) -> "InvariantForm":
        return cls(dim, {(0, 1, "1"): Poly.const(1)})

    @classmethod
    def dt(cls) -> "InvariantForm":
        return cls(6, {(1, 0, "1"): Poly.const(1)})

    @classmethod
    def named(cls, base: str, dim: int = 5) -> "InvariantForm":
        if base not in BASES:
            raise ValueError(f"unknown base form {base!r}")
        return cls(dim, {(0, 0, base): Poly.const(1)})

    @classmethod
    def two_form(cls, q: Sequence[Union[Scalar, Poly]], dim: int = 5) -> "InvariantForm":
        """Combination q0*alpha0 + q1*alpha1 + q2*alpha2 + q3*dtheta."""
        if len(q) != 4:
            raise ValueError("need four coefficients over (alpha0, alpha1, alpha2, dtheta)")
        names = ("a0", "a1", "a2", "dth")
        return cls(dim, {(0, 0, n): Poly.lift(c) for n, c in zip(names, q)})

    # -- inspection ----------------------------------------------------------
    def coeff(self, mono: Mono) -> Poly:
        return self.terms.get(tuple(mono), Poly())

    def grades(self) -> set:
        return {mono_grade(m) for m in self.terms}

    def grade_part(self, k: int) -> "InvariantForm":
        return InvariantForm(self.dim, {m: c for m, c in self.terms.items() if mono_grade(m) == k})

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def is_exact(self) -> bool:
        return all(c.is_exact() for c in self.terms.values())

    def is_zero_exact(self) -> bool:
        return not self.terms

    def max_abs(self) -> float:
        return max((c.max_abs() for c in self.terms.values()), default=0.0)

    def is_zero(self, tol: float = DEFAULT_TOL) -> bool:
        if self.is_exact():
            return self.is_zero_exact()
        return self.max_abs() <= tol

    def as_dim6(self) -> "InvariantForm":
        return InvariantForm(6, dict(self.terms))

    # -- algebra -------------------------------------------------------------
    def __add__(self, other: "InvariantForm") -> "InvariantForm":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Poly()) + c
        return InvariantForm(self.dim, out)

    def __neg__(self) -> "InvariantForm":
        return InvariantForm(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "InvariantForm") -> "InvariantForm":
        return self + (-other)

    def __mul__(self, factor: Union[Scalar, Poly]) -> "InvariantForm":
        factor = Poly.lift(factor)
        return InvariantForm(self.dim, {m: c * factor for m, c in self.terms.items()})

    __rmul__ = __mul__

    def wedge(self, other: "InvariantForm") -> "InvariantForm":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out: Dict[Mono, Poly] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                hit = _wedge_mono(m1, m2)
                if hit is None:
                    continue
                coeff, mono = hit
                out[mono] = out.get(mono, Poly()) + c1 * c2 * coeff
        return InvariantForm(self.dim, out)


def _d_mono_static(mono: Mono, geom: GeometryParams) -> list:
    """Derivative of a dt-free monomial as [(Scalar, Mono)] in the static calculus."""
    _, th, base = mono
    K = geom.K
    inv_s2 = Fraction(1) / geom.s2 if is_exact(geom.s2) else 1.0 / geom.s2
    if th == 0:
        if base == "a0":
            return [(inv_s2, (0, 1, "a1"))]
        if base == "a1":
            return [(2 * inv_s2, (0, 1, "a2")), (-2 * K, (0, 1, "a0"))]
        if base == "a2":
            return [(-K, (0, 1, "a1"))]
        return []
    # theta ∧ base: d(theta ∧ b) = dtheta ∧ b - theta ∧ db, and theta ∧ db
    # always vanishes because db is itself a theta multiple.
    if base == "1":
        return [(1, (0, 0, "dth"))]
    if base == "dth":
        return [(-2, (0, 0, "E"))]
    return []


def d_invariant(w: InvariantForm, geom: GeometryParams) -> InvariantForm:
    """Exterior derivative in the static (5-dimensional) mode."""
    if w.dim != 5:
        raise ValueError("d_invariant needs a 5-dimensional form; use d_extended")
    out: Dict[Mono, Poly] = {}
    for mono, poly in w.terms.items():
        for coeff, target in _d_mono_static(mono, geom):
            out[target] = out.get(target, Poly()) + poly * coeff
    return InvariantForm(5, out)


def d_extended(w: InvariantForm, geom: GeometryParams) -> InvariantForm:
    """Derivative on the product with the t-axis: d = d_S + dt ∧ ∂_t."""
    if w.dim != 6:
        raise ValueError("d_extended needs a 6-dimensional form; use d_invariant")
    out: Dict[Mono, Poly] = {}
    for (dflag, th, base), poly in w.terms.items():
        sign = -1 if dflag else 1
        for coeff, (_, th2, base2) in _d_mono_static((0, th, base), geom):
            target = (dflag, th2, base2)
            out[target] = out.get(target, Poly()) + poly * (sign * coeff)
        if not dflag:
            dp = poly.deriv()
            if not dp.is_zero():
                target = (1, th, base)
                out[target] = out.get(target, Poly()) + dp
    return InvariantForm(6, out)


# -- e-basis bridge ----------------------------------------------------------

_GENERATORS_KER = {
    "a0": {(1, 2): 1},
    "a1": {(1, 4): 1, (2, 3): -1},
    "a2": {(3, 4): 1},
    "dth": {(1, 3): -1, (2, 4): -1},
    "E": {(1, 2, 3, 4): 1},
}


def generator(name: str, geom: GeometryParams, dim: int = 5) -> KForm:
    """Named generator expanded over the coframe e0..e4 (and dt as index 5)."""
    table = {
        "theta": (1, {(0,): geom.s}),
        "alpha0": (2, _GENERATORS_KER["a0"]),
        "alpha1": (2, _GENERATORS_KER["a1"]),
        "alpha2": (2, _GENERATORS_KER["a2"]),
        "dtheta": (2, _GENERATORS_KER["dth"]),
        "psi1": (2, {(1, 4): 1, (2, 3): 1}),
        "psi2": (2, {(1, 3): -1, (2, 4): 1}),
        "vol4": (4, _GENERATORS_KER["E"]),
        "vol5": (5, {(0, 1, 2, 3, 4): 1}),
    }
    if name not in table:
        raise ValueError(f"unknown generator {name!r}")
    grade, terms = table[name]
    return KForm(dim, grade, dict(terms))


def _mono_kform(mono: Mono, geom: GeometryParams, dim: int) -> KForm:
    d, th, base = mono
    form = KForm(dim, 0, {(): 1})
    if d:
        form = wedge(form, KForm(dim, 1, {(5,): 1}))
    if th:
        form = wedge(form, KForm(dim, 1, {(0,): geom.s}))
    if base != "1":
        form = wedge(form, KForm(dim, BASE_GRADE[base], dict(_GENERATORS_KER[base])))
    return form


def expand_invariant(w: InvariantForm, geom: GeometryParams, at_t: Optional[Scalar] = None) -> KForm:
    """Expand a homogeneous invariant form over the raw coframe."""
    if not w.is_homogeneous():
        raise ValueError("expansion needs a homogeneous form")
    if not w.terms:
        return KForm.zero(w.dim, 0)
    grade = next(iter(w.grades()))
    total = KForm.zero(w.dim, grade)
    for mono, poly in w.terms.items():
        if poly.is_constant():
            value = poly.constant_value()
        else:
            if at_t is None:
                raise ValueError("t-dependent coefficients need an evaluation point at_t")
            value = poly(at_t)
        total = total + _mono_kform(mono, geom, w.dim) * value
    return total


def _divide(num: Scalar, den: Scalar) -> Scalar:
    if is_exact(num) and is_exact(den):
        return Fraction(num) / Fraction(den)
    return float(num) / float(den)


def _solve_columns(columns: list, target: dict, keys: list) -> tuple:
    """Solve sum_i q_i * col_i = target by elimination; returns (q, residual)."""
    nrows, ncols = len(keys), len(columns)
    a = [[col.get(k, 0) for col in columns] for k in keys]
    b = [target.get(k, 0) for k in keys]
    q = [0] * ncols
    pivot_rows: list = []
    used = set()
    for c in range(ncols):
        pivot, best = None, 0.0
        for r in range(nrows):
            if r in used:
                continue
            mag = abs(float(a[r][c]))
            if mag > best:
                pivot, best = r, mag
        if pivot is None:
            continue
        used.add(pivot)
        pivot_rows.append((pivot, c))
        for r in range(nrows):
            if r == pivot or a[r][c] == 0:
                continue
            factor = _divide(a[r][c], a[pivot][c])
            for cc in range(ncols):
                a[r][cc] = a[r][cc] - factor * a[pivot][cc]
            b[r] = b[r] - factor * b[pivot]
    for pivot, c in reversed(pivot_rows):
        acc = b[pivot]
        for cc in range(c + 1, ncols):
            acc = acc - a[pivot][cc] * q[cc]
        q[c] = _divide(acc, a[pivot][c])
    residual = 0.0
    for r, k in enumerate(keys):
        val = target.get(k, 0)
        for c, col in enumerate(columns):
            val = val - q[c] * col.get(k, 0)
        residual = max(residual, abs(float(val)))
    return q, residual


def project_invariant(f: KForm, geom: GeometryParams, tol: float = DEFAULT_TOL) -> InvariantForm:
    """Project an e-basis form onto the invariant span; SpanError outside it."""
    monos = [m for m in _all_monos(f.dim) if mono_grade(m) == f.grade]
    if not monos:
        if f.is_zero(tol):
            return InvariantForm.zero(f.dim)
        raise SpanError(f.max_abs())
    columns = [_mono_kform(m, geom, f.dim).terms for m in monos]
    keys = sorted(set().union(*[set(c) for c in columns], set(f.terms)))
    q, residual = _solve_columns(columns, f.terms, keys)
    if residual > tol:
        raise SpanError(residual)
    out = {m: Poly.const(v) for m, v in zip(monos, q) if v != 0}
    return InvariantForm(f.dim, out)


def _all_monos(dim: int) -> list:
    dts = (0, 1) if dim == 6 else (0,)
    return [(d, t, b) for d in dts for t in (0, 1) for b in BASES]
