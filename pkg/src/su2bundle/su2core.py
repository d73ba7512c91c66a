"""SU(2)-structure validity, the induced metric by two routes, and the
compatible almost-complex endomorphisms.

A natural structure is the data (p; a; b; c) over a geometry (K, s2):

    theta~ = -2p theta,
    omega1 = a0 alpha0 + a1 alpha1 + a2 alpha2 + a3 dtheta,

and likewise omega2, omega3 with the b and c quadruples. The metric on
ker theta comes out two independent ways: a closed-form matrix in the
coefficients, and a triple-wedge contraction against the oriented volume
-e1234 of ker theta. Their agreement is the core cross-check of the package.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ConstraintViolation
from .exterior import FrameVector, KForm, contract, wedge
from .frames import GeometryParams, InvariantForm, _GENERATORS_KER
from .scalars import DEFAULT_TOL, Scalar, is_exact, is_zero, scalar_eq

Quad = tuple  # (q0, q1, q2, q3)


def _validate_quad(q: Sequence[Scalar]) -> Quad:
    q = tuple(q)
    if len(q) != 4:
        raise ValueError("coefficient quadruple must have four entries")
    return q


@dataclass(frozen=True)
class NaturalStructure:
    """Constant-coefficient SU(2)-structure data on the sphere bundle."""

    p: Scalar
    a: Quad
    b: Quad
    c: Quad
    geom: GeometryParams

    def __post_init__(self):
        object.__setattr__(self, "a", _validate_quad(self.a))
        object.__setattr__(self, "b", _validate_quad(self.b))
        object.__setattr__(self, "c", _validate_quad(self.c))
        if self.p == 0:
            raise ConstraintViolation("p != 0")

    def quad(self, i: int) -> Quad:
        return (self.a, self.b, self.c)[i - 1]

    def nu_of(self, i: int) -> Scalar:
        q0, q1, q2, q3 = self.quad(i)
        return q1 * q1 + q3 * q3 - q0 * q2

    @property
    def nu(self) -> Scalar:
        return self.nu_of(1)

    def omega(self, i: int, dim: int = 5) -> InvariantForm:
        return InvariantForm.two_form(self.quad(i), dim)

    def theta_tilde(self, dim: int = 5) -> InvariantForm:
        return InvariantForm.theta(dim) * (-2 * self.p)

    def omega_kform(self, i: int) -> KForm:
        out: dict = {}
        for name, coeff in zip(("a0", "a1", "a2", "dth"), self.quad(i)):
            for idx, base_c in _GENERATORS_KER[name].items():
                out[idx] = out.get(idx, 0) + coeff * base_c
        return KForm(5, 2, out)


@dataclass(frozen=True)
class SU2Check:
    valid: bool
    nu: Scalar
    violations: tuple


@dataclass(frozen=True)
class MetricReport:
    """Closed-form metric data on ker theta, plus e0 normalization g00."""

    g11: Scalar
    g13: Scalar
    g23: Scalar
    g33: Scalar
    g00: Scalar
    minor: Scalar  # g11*g33 - g13^2 - g23^2
    det: Scalar
    positive_definite: bool
    g_natural: bool
    matrix: tuple


@dataclass(frozen=True)
class PhiTriple:
    phi1: tuple
    phi2: tuple
    phi3: tuple

    def get(self, i: int) -> tuple:
        return (self.phi1, self.phi2, self.phi3)[i - 1]


@dataclass(frozen=True)
class PreservationFlags:
    """Whether each Phi_i preserves the vertical (V0) and horizontal (H0) planes."""

    phi1_v0: bool
    phi1_h0: bool
    phi2_v0: bool
    phi2_h0: bool
    phi3_v0: bool
    phi3_h0: bool

    def as_dict(self) -> dict:
        return {
            "phi1": {"V0": self.phi1_v0, "H0": self.phi1_h0},
            "phi2": {"V0": self.phi2_v0, "H0": self.phi2_h0},
            "phi3": {"V0": self.phi3_v0, "H0": self.phi3_h0},
        }


def metric_closed_form(ns: NaturalStructure, tol: float = DEFAULT_TOL) -> MetricReport:
    """Metric entries as explicit cubics in the structure coefficients."""
    a0, a1, a2, a3 = ns.a
    b0, b1, b2, b3 = ns.b
    c0, c1, c2, c3 = ns.c
    half = Fraction(1, 2)
    g11 = (a1 * b0 - a0 * b1) * c3 + (a0 * b3 - a3 * b0) * c1 + (a3 * b1 - a1 * b3) * c0
    g33 = (a2 * b1 - a1 * b2) * c3 + (a1 * b3 - a3 * b1) * c2 + (a3 * b2 - a2 * b3) * c1
    g13 = half * (a3 * (b2 * c0 - b0 * c2) + b3 * (a0 * c2 - a2 * c0) + c3 * (a2 * b0 - a0 * b2))
    g14 = half * (a1 * (b0 * c2 - b2 * c0) + b1 * (a2 * c0 - a0 * c2) + c1 * (a0 * b2 - a2 * b0))
    g23 = -g14
    g00 = 4 * ns.p * ns.p * ns.geom.s2
    minor = g11 * g33 - g13 * g13 - g23 * g23
    det = minor * minor
    pd = g11 > 0 and minor > 0
    matrix = (
        (g11, 0, g13, -g23),
        (0, g11, g23, g13),
        (g13, g23, g33, 0),
        (-g23, g13, 0, g33),
    )
    return MetricReport(
        g11=g11, g13=g13, g23=g23, g33=g33, g00=g00,
        minor=minor, det=det, positive_definite=pd,
        g_natural=is_zero(g23, tol), matrix=matrix,
    )


def check_su2(ns: NaturalStructure, tol: float = DEFAULT_TOL) -> SU2Check:
    """Algebraic validity: equal nonzero nu, pairwise orthogonality, positivity."""
    violations = []
    nu_a, nu_b, nu_c = ns.nu_of(1), ns.nu_of(2), ns.nu_of(3)
    if not scalar_eq(nu_a, nu_b, tol):
        violations.append("a1^2 + a3^2 - a0*a2 = b1^2 + b3^2 - b0*b2")
    if not scalar_eq(nu_b, nu_c, tol):
        violations.append("b1^2 + b3^2 - b0*b2 = c1^2 + c3^2 - c0*c2")
    if is_zero(nu_a, tol):
        violations.append("nu != 0")
    a0, a1, a2, a3 = ns.a
    b0, b1, b2, b3 = ns.b
    c0, c1, c2, c3 = ns.c
    orth = {
        "a0*b2 + a2*b0 - 2*a1*b1 - 2*a3*b3 = 0": a0 * b2 + a2 * b0 - 2 * a1 * b1 - 2 * a3 * b3,
        "b0*c2 + b2*c0 - 2*b1*c1 - 2*b3*c3 = 0": b0 * c2 + b2 * c0 - 2 * b1 * c1 - 2 * b3 * c3,
        "c0*a2 + c2*a0 - 2*c1*a1 - 2*c3*a3 = 0": c0 * a2 + c2 * a0 - 2 * c1 * a1 - 2 * c3 * a3,
    }
    for label, value in orth.items():
        if not is_zero(value, tol):
            violations.append(label)
    report = metric_closed_form(ns, tol)
    if not report.g11 > 0:
        violations.append("g11 > 0")
    if not report.minor > 0:
        violations.append("g11*g33 - g13^2 - g23^2 > 0")
    return SU2Check(valid=not violations, nu=nu_a, violations=tuple(violations))


def metric_contraction(ns: NaturalStructure, x: FrameVector, y: FrameVector) -> Scalar:
    """Metric value from the triple wedge (x ⌟ omega1) ∧ (y ⌟ omega2) ∧ omega3.

    The result is measured against the oriented unit volume -e1234 of
    ker theta, which is what makes this route agree entrywise with the
    closed-form matrix for every valid structure. Both vectors must lie
    in ker theta (zero e0 component).
    """
    if x.dim != 5 or y.dim != 5:
        raise ValueError("vectors must live in the 5-dimensional frame")
    if x.components[0] != 0 or y.components[0] != 0:
        raise ValueError("vectors must lie in ker theta (zero e0 component)")
    if ns.nu == 0:
        raise ConstraintViolation("nu != 0")
    w1, w2, w3 = ns.omega_kform(1), ns.omega_kform(2), ns.omega_kform(3)
    top = wedge(wedge(contract(x, w1), contract(y, w2)), w3)
    return -top.coeff((1, 2, 3, 4))


def metric_contraction_symmetric(ns: NaturalStructure, x: FrameVector, y: FrameVector) -> Scalar:
    value = metric_contraction(ns, x, y) + metric_contraction(ns, y, x)
    return Fraction(1, 2) * value if is_exact(value) else 0.5 * value


# -- endomorphisms -----------------------------------------------------------

def _omega_matrix(q: Quad) -> tuple:
    q0, q1, q2, q3 = q
    return (
        (0, q0, -q3, q1),
        (-q0, 0, -q1, -q3),
        (q3, q1, 0, q2),
        (-q1, q3, -q2, 0),
    )


def _omega_hat(q: Quad) -> tuple:
    q0, q1, q2, q3 = q
    return (
        (0, q2, q3, -q1),
        (-q2, 0, q1, q3),
        (-q3, -q1, 0, q0),
        (q1, -q3, -q0, 0),
    )


def _mat_mul(a: tuple, b: tuple) -> tuple:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4))
        for i in range(4)
    )


def _mat_scale(a: tuple, s: Scalar) -> tuple:
    return tuple(tuple(x * s for x in row) for row in a)


def _mat_transpose(a: tuple) -> tuple:
    return tuple(tuple(a[j][i] for j in range(4)) for i in range(4))


def _mat_close(a: tuple, b: tuple, tol: float) -> bool:
    return all(scalar_eq(a[i][j], b[i][j], tol) for i in range(4) for j in range(4))


_ID4 = tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4))


def phi_matrices(ns: NaturalStructure, tol: float = DEFAULT_TOL) -> PhiTriple:
    """The three metric-compatible almost-complex matrices on (e1..e4).

    Column convention: Phi acts on basis column vectors, so Phi e_j is the
    j-th column. Built as omega_hat_i times G over nu^2; the square of nu is
    what makes Phi^2 = -Id hold for every valid structure, since the matrix G
    carries a factor nu relative to the unit-volume metric. For nu = 1 this
    is omega_hat_i * G and omega_i(x, Phi_i y) = G(x, y) on the nose.
    """
    check = check_su2(ns, tol)
    if not check.valid:
        raise ConstraintViolation(
            "g11 > 0 and g11*g33 - g13^2 - g23^2 > 0",
            f"Phi matrices need a valid structure; violations: {list(check.violations)}",
        )
    report = metric_closed_form(ns, tol)
    nu2 = check.nu * check.nu
    inv_nu2 = Fraction(1) / Fraction(nu2) if is_exact(nu2) else 1.0 / nu2
    phis = []
    for i in (1, 2, 3):
        hat = _omega_hat(ns.quad(i))
        phi = _mat_scale(_mat_mul(hat, report.matrix), inv_nu2)
        phis.append(phi)
        if not _mat_close(_mat_mul(phi, phi), _mat_scale(_ID4, -1), max(tol, 1e-7)):
            raise ArithmeticError(f"Phi{i}^2 != -Id; inconsistent structure data")
        gram = _mat_mul(_mat_transpose(phi), _mat_mul(report.matrix, phi))
        if not _mat_close(gram, report.matrix, max(tol, 1e-7)):
            raise ArithmeticError(f"Phi{i} is not metric-orthogonal")
    return PhiTriple(*phis)


def preservation_flags(ns: NaturalStructure, tol: float = DEFAULT_TOL) -> PreservationFlags:
    """Which Phi_i map the vertical plane V0 = <e3,e4> and the horizontal
    plane H0 = <e1,e2> to themselves."""
    report = metric_closed_form(ns, tol)
    g11, g13, g23, g33 = report.g11, report.g13, report.g23, report.g33
    flags = []
    for i in (1, 2, 3):
        q0, q1, q2, q3 = ns.quad(i)
        v0 = is_zero(q2 * g23 + q3 * g33, tol) and is_zero(q2 * g13 - q1 * g33, tol)
        h0 = is_zero(q0 * g23 + q3 * g11, tol) and is_zero(q0 * g13 - q1 * g11, tol)
        flags.extend([v0, h0])
    return PreservationFlags(*flags)
