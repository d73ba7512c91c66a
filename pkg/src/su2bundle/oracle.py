"""Brute-force coordinate verification on the flat model R^3 x S^2.

The named forms are written in coordinates (x1, x2, x3) on R^3 and
stereographic coordinates (xi, eta) on the unit sphere, with the radius-1,
curvature-0 normalization:

    theta  = sum_i u^i dx^i
    dtheta = sum_i du^i ∧ dx^i
    alpha0 = sum_cyc u^1 dx^2 ∧ dx^3
    alpha1 = sum_cyc u^1 (dx^2 ∧ du^3 - dx^3 ∧ du^2)
    alpha2 = sum_cyc u^1 du^2 ∧ du^3

The exterior derivative is evaluated through the coordinate formula on
constant chart vector fields, with directional derivatives taken by
forward-mode dual numbers (machine exact for these rational charts) and
cross-checked by central finite differences.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

POLE_NAMES = ("north", "south")
FD_STEP = 1e-5
POLE_RADIUS = 1e-2


class Dual:
    """First-order dual number a + b*eps with generic components."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0.0):
        self.a = a
        self.b = b

    @staticmethod
    def lift(x):
        return x if isinstance(x, Dual) else Dual(x, 0.0)

    def __add__(self, other):
        other = Dual.lift(other)
        return Dual(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, other):
        other = Dual.lift(other)
        return Dual(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return Dual.lift(other) - self

    def __mul__(self, other):
        other = Dual.lift(other)
        return Dual(self.a * other.a, self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Dual.lift(other)
        return Dual(self.a / other.a, (self.b * other.a - self.a * other.b) / (other.a * other.a))

    def __rtruediv__(self, other):
        return Dual.lift(other) / self

    def value(self):
        x = self.a
        while isinstance(x, Dual):
            x = x.a
        return x


def _value(x):
    return x.value() if isinstance(x, Dual) else x


def sphere_point(xi, eta, pole: str):
    """Unit sphere point from stereographic coordinates; generic arithmetic."""
    rho2 = xi * xi + eta * eta
    denom = rho2 + 1.0
    u1 = 2.0 * xi / denom
    u2 = 2.0 * eta / denom
    if pole == "north":
        u3 = (rho2 - 1.0) / denom
    elif pole == "south":
        u3 = (1.0 - rho2) / denom
    else:
        raise ValueError(f"unknown pole {pole!r}")
    return u1, u2, u3


def sphere_jacobian(xi, eta, pole: str):
    """Partials of u with respect to (xi, eta), via an inner dual level."""
    du_dxi = sphere_point(Dual(xi, 1.0), Dual(eta, 0.0), pole)
    du_deta = sphere_point(Dual(xi, 0.0), Dual(eta, 1.0), pole)
    return tuple((du_dxi[i].b, du_deta[i].b) for i in range(3))


def chart_coords(u: Sequence[float], pole: str) -> tuple:
    """Stereographic coordinates of a sphere point in the given chart."""
    u1, u2, u3 = u
    denom = (1.0 - u3) if pole == "north" else (1.0 + u3)
    if abs(denom) < 1e-6:
        raise ValueError(f"point too close to the {pole} chart pole")
    return u1 / denom, u2 / denom


@dataclass(frozen=True)
class ChartPoint:
    """Point of R^3 x S^2 (optionally x R_+) in one stereographic chart."""

    x: tuple
    xi: float
    eta: float
    pole: str = "north"
    t: Optional[float] = None

    def __post_init__(self):
        if self.pole not in POLE_NAMES:
            raise ValueError(f"unknown pole {self.pole!r}")
        if self.t is not None and not self.t > 0:
            raise ValueError("t must be positive")
        u = self.u
        norm2 = sum(c * c for c in u)
        if abs(norm2 - 1.0) > 1e-12:
            raise ValueError("sphere point drifted off the unit sphere")

    @property
    def dim(self) -> int:
        return 5 if self.t is None else 6

    @property
    def u(self) -> tuple:
        return sphere_point(float(self.xi), float(self.eta), self.pole)

    def coords(self) -> tuple:
        base = (*self.x, self.xi, self.eta)
        return base if self.t is None else (*base, self.t)

    @classmethod
    def from_u(cls, x: Sequence[float], u: Sequence[float], pole: str,
               t: Optional[float] = None) -> "ChartPoint":
        xi, eta = chart_coords(u, pole)
        return cls(x=tuple(x), xi=xi, eta=eta, pole=pole, t=t)


# -- term-list representation of forms ----------------------------------------

def _basis_cov(dim: int, i: int) -> tuple:
    return tuple(1.0 if j == i else 0.0 for j in range(dim))


def _covector(entries: dict, dim: int) -> tuple:
    return tuple(entries.get(j, 0.0) for j in range(dim))


def _named_terms(name: str, coords: Sequence, pole: str, dim: int) -> list:
    """Term list [(coeff, (cov, ...)), ...] for a named form at the point.

    Works over floats or duals: coords entries may be Dual numbers.
    """
    xi, eta = coords[3], coords[4]
    u = sphere_point(xi, eta, pole)
    jac = sphere_jacobian(xi, eta, pole)
    dx = [_basis_cov(dim, i) for i in range(3)]
    du = [_covector({3: jac[i][0], 4: jac[i][1]}, dim) for i in range(3)]
    cyc = ((0, 1, 2), (1, 2, 0), (2, 0, 1))

    if name == "theta":
        return [(u[i], (dx[i],)) for i in range(3)]
    if name == "dtheta":
        return [(1.0, (du[i], dx[i])) for i in range(3)]
    if name == "alpha0":
        return [(u[i], (dx[j], dx[k])) for i, j, k in cyc]
    if name == "alpha1":
        out = []
        for i, j, k in cyc:
            out.append((u[i], (dx[j], du[k])))
            out.append((-u[i], (dx[k], du[j])))
        return out
    if name == "alpha2":
        return [(u[i], (du[j], du[k])) for i, j, k in cyc]
    if name == "dt":
        if dim != 6:
            raise ValueError("dt needs the 6-dimensional chart")
        return [(1.0, (_basis_cov(dim, 5),))]
    raise ValueError(f"unknown form {name!r}")


def _scale_terms(terms: list, factor) -> list:
    return [(factor * c, covs) for c, covs in terms]


def _wedge_terms(t1: list, t2: list) -> list:
    return [(c1 * c2, covs1 + covs2) for c1, covs1 in t1 for c2, covs2 in t2]


def _add_terms(*term_lists: list) -> list:
    out = []
    for terms in term_lists:
        out.extend(terms)
    return out


def _det(rows: list):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = None
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def _eval_terms(terms: list, vectors: Sequence[Sequence[float]]):
    k = len(vectors)
    total = 0.0
    for coeff, covs in terms:
        if len(covs) != k:
            raise ValueError("form degree does not match vector count")
        rows = [[sum(cv[i] * v[i] for i in range(len(v))) for v in vectors] for cv in covs]
        total = coeff * _det(rows) + total
    return total


def form_terms(name: str, coords: Sequence, pole: str, dim: int) -> list:
    """Named and composite forms, including the flat product-space family."""
    simple = {"theta", "dtheta", "alpha0", "alpha1", "alpha2", "dt"}
    if name in simple:
        return _named_terms(name, coords, pole, dim)
    composites = {
        "theta^alpha1": ("theta", "alpha1"),
        "theta^alpha2": ("theta", "alpha2"),
        "theta^alpha0": ("theta", "alpha0"),
        "alpha0^alpha2": ("alpha0", "alpha2"),
        "alpha1^alpha1": ("alpha1", "alpha1"),
        "dtheta^dtheta": ("dtheta", "dtheta"),
        "alpha0^dtheta": ("alpha0", "dtheta"),
        "alpha1^dtheta": ("alpha1", "dtheta"),
        "alpha2^dtheta": ("alpha2", "dtheta"),
    }
    if name in composites:
        n1, n2 = composites[name]
        return _wedge_terms(
            _named_terms(n1, coords, pole, dim), _named_terms(n2, coords, pole, dim)
        )
    if dim != 6:
        raise ValueError(f"form {name!r} needs the 6-dimensional chart")
    t = coords[5]
    th = _named_terms("theta", coords, pole, dim)
    dth = _named_terms("dtheta", coords, pole, dim)
    a0 = _named_terms("alpha0", coords, pole, dim)
    a1 = _named_terms("alpha1", coords, pole, dim)
    a2 = _named_terms("alpha2", coords, pole, dim)
    dt = _named_terms("dt", coords, pole, dim)
    if name == "F":
        # F = t dtheta - theta ∧ dt for the flat family (p = 1/2, s = 1).
        return _add_terms(_scale_terms(dth, t), _scale_terms(_wedge_terms(th, dt), -1.0))
    if name == "psi_plus":
        # psi+ = theta ∧ alpha0 - t^2 theta ∧ alpha2 - t alpha1 ∧ dt
        return _add_terms(
            _wedge_terms(th, a0),
            _scale_terms(_wedge_terms(th, a2), -(t * t)),
            _scale_terms(_wedge_terms(a1, dt), -t),
        )
    if name == "psi_minus":
        # psi- = -(t theta ∧ alpha1 - t^2 alpha2 ∧ dt + alpha0 ∧ dt)
        return _add_terms(
            _scale_terms(_wedge_terms(th, a1), -t),
            _scale_terms(_wedge_terms(a2, dt), t * t),
            _scale_terms(_wedge_terms(a0, dt), -1.0),
        )
    raise ValueError(f"unknown form {name!r}")


def eval_form(name: str, pt: ChartPoint, vectors: Sequence[Sequence[float]]) -> float:
    """Multilinear evaluation of a named form on chart tangent vectors."""
    terms = form_terms(name, pt.coords(), pt.pole, pt.dim)
    return _value(_eval_terms(terms, vectors))


def numeric_d(name: str, pt: ChartPoint, vectors: Sequence[Sequence[float]],
              method: str = "dual") -> float:
    """Coordinate exterior derivative on constant chart vector fields.

    d(omega)(v0..vk) = sum_j (-1)^j d/ds [omega(v0,..,v_j omitted,..,vk)]
    along v_j, exact for constant vectors because their brackets vanish.
    """
    coords = pt.coords()
    dim = pt.dim
    total = 0.0
    for j, v in enumerate(vectors):
        rest = [w for i, w in enumerate(vectors) if i != j]
        if method == "dual":
            seeded = tuple(Dual(float(c), float(v[i])) for i, c in enumerate(coords))
            value = _eval_terms(form_terms(name, seeded, pt.pole, dim), rest)
            deriv = value.b if isinstance(value, Dual) else 0.0
        elif method == "fd":
            plus = tuple(float(c) + FD_STEP * v[i] for i, c in enumerate(coords))
            minus = tuple(float(c) - FD_STEP * v[i] for i, c in enumerate(coords))
            f_plus = _value(_eval_terms(form_terms(name, plus, pt.pole, dim), rest))
            f_minus = _value(_eval_terms(form_terms(name, minus, pt.pole, dim), rest))
            deriv = (f_plus - f_minus) / (2 * FD_STEP)
        else:
            raise ValueError(f"unknown method {method!r}")
        total += deriv if j % 2 == 0 else -deriv
    return total


# -- sampling and verification -------------------------------------------------

def _random_sphere_point(rng: random.Random) -> tuple:
    while True:
        g = (rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        norm = (g[0] ** 2 + g[1] ** 2 + g[2] ** 2) ** 0.5
        if norm < 1e-6:
            continue
        u = (g[0] / norm, g[1] / norm, g[2] / norm)
        # keep a safety band around both chart poles
        if abs(1.0 - u[2]) < POLE_RADIUS or abs(1.0 + u[2]) < POLE_RADIUS:
            continue
        return u


def _basis_tuples(dim: int, k: int) -> list:
    basis = [tuple(1.0 if j == i else 0.0 for j in range(dim)) for i in range(dim)]
    return [tuple(basis[i] for i in combo) for combo in itertools.combinations(range(dim), k)]


FLAT_IDENTITIES_D = (
    ("d(alpha0) = theta^alpha1", "alpha0", (("theta^alpha1", 1.0),)),
    ("d(alpha1) = 2*theta^alpha2", "alpha1", (("theta^alpha2", 2.0),)),
    ("d(alpha2) = 0", "alpha2", ()),
    ("d(d(theta)) = 0", "dtheta", ()),
)
FLAT_IDENTITIES_WEDGE = (
    ("alpha0^alpha2 + (1/2)*alpha1^alpha1 = 0", (("alpha0^alpha2", 1.0), ("alpha1^alpha1", 0.5))),
    ("alpha0^alpha2 + (1/2)*dtheta^dtheta = 0", (("alpha0^alpha2", 1.0), ("dtheta^dtheta", 0.5))),
    ("alpha0^dtheta = 0", (("alpha0^dtheta", 1.0),)),
    ("alpha1^dtheta = 0", (("alpha1^dtheta", 1.0),)),
    ("alpha2^dtheta = 0", (("alpha2^dtheta", 1.0),)),
)


def _d_identity_residual(pt: ChartPoint, form: str, rhs: tuple, tuples3: list) -> float:
    worst = 0.0
    for vecs in tuples3:
        value = numeric_d(form, pt, vecs)
        for rhs_name, coeff in rhs:
            value -= coeff * eval_form(rhs_name, pt, vecs)
        worst = max(worst, abs(value))
    return worst


def verify_flat_system(n_samples: int, seed: int = 0) -> dict:
    """Residuals of the flat structure equations at random chart points.

    Every identity is evaluated on all basis tuples of matching degree, in
    both stereographic charts; the report carries per-identity maxima, the
    forward-mode versus finite-difference agreement, and the chart
    disagreement at shared sample points.
    """
    rng = random.Random(seed)
    identities = {label: 0.0 for label, *_ in FLAT_IDENTITIES_D}
    identities.update({label: 0.0 for label, _ in FLAT_IDENTITIES_WEDGE})
    tuples3 = _basis_tuples(5, 3)
    tuples4 = _basis_tuples(5, 4)
    ad_fd = 0.0
    chart_gap = 0.0
    for sample in range(n_samples):
        x = tuple(rng.uniform(-1.0, 1.0) for _ in range(3))
        u = _random_sphere_point(rng)
        points = {pole: ChartPoint.from_u(x, u, pole) for pole in POLE_NAMES}
        for label, form, rhs in FLAT_IDENTITIES_D:
            per_chart = {}
            for pole, pt in points.items():
                res = _d_identity_residual(pt, form, rhs, tuples3)
                per_chart[pole] = res
                identities[label] = max(identities[label], res)
            chart_gap = max(chart_gap, abs(per_chart["north"] - per_chart["south"]))
        for label, combo in FLAT_IDENTITIES_WEDGE:
            per_chart = {}
            for pole, pt in points.items():
                worst = 0.0
                for vecs in tuples4:
                    value = sum(c * eval_form(nm, pt, vecs) for nm, c in combo)
                    worst = max(worst, abs(value))
                per_chart[pole] = worst
                identities[label] = max(identities[label], worst)
            chart_gap = max(chart_gap, abs(per_chart["north"] - per_chart["south"]))
        if sample < 3:
            pt = points["north"]
            for form in ("alpha1", "alpha2", "dtheta"):
                for vecs in tuples3:
                    ad_fd = max(ad_fd, abs(
                        numeric_d(form, pt, vecs) - numeric_d(form, pt, vecs, method="fd")
                    ))
    return {
        "samples": n_samples,
        "seed": seed,
        "identities": identities,
        "max_residual": max(identities.values(), default=0.0),
        "ad_vs_fd": ad_fd,
        "chart_disagreement": chart_gap,
    }


SU3_IDENTITIES = ("d(F) = 0", "d(psi_plus) = 0", "d(psi_minus) = 0")


def verify_flat_su3(n_samples: int, seed: int = 0) -> dict:
    """Residuals of d(F) = d(psi) = 0 for the flat product family."""
    rng = random.Random(seed)
    identities = {label: 0.0 for label in SU3_IDENTITIES}
    tuples3 = _basis_tuples(6, 3)
    tuples4 = _basis_tuples(6, 4)
    names = {"d(F) = 0": ("F", tuples3), "d(psi_plus) = 0": ("psi_plus", tuples4),
             "d(psi_minus) = 0": ("psi_minus", tuples4)}
    for _ in range(n_samples):
        x = tuple(rng.uniform(-1.0, 1.0) for _ in range(3))
        u = _random_sphere_point(rng)
        t = rng.uniform(0.1, 10.0)
        pole = rng.choice(POLE_NAMES)
        pt = ChartPoint.from_u(x, u, pole, t=t)
        for label, (form, tuples) in names.items():
            for vecs in tuples:
                identities[label] = max(identities[label], abs(numeric_d(form, pt, vecs)))
    return {
        "samples": n_samples,
        "seed": seed,
        "identities": identities,
        "max_residual": max(identities.values(), default=0.0),
    }


def adapted_frame_vectors(t: Optional[float] = None) -> tuple:
    """The chart point over u = (0,0,1) and the chart images of e0..e4.

    In the south chart at xi = eta = 0 the adapted frame is
    e0 = d/dx3, e1 = d/dx1, e2 = d/dx2, e3 = (1/2) d/dxi, e4 = (1/2) d/deta.
    """
    pt = ChartPoint(x=(0.0, 0.0, 0.0), xi=0.0, eta=0.0, pole="south", t=t)
    dim = pt.dim
    zeros = [0.0] * dim

    def vec(entries: dict) -> tuple:
        v = list(zeros)
        for i, val in entries.items():
            v[i] = val
        return tuple(v)

    frame = (
        vec({2: 1.0}),
        vec({0: 1.0}),
        vec({1: 1.0}),
        vec({3: 0.5}),
        vec({4: 0.5}),
    )
    if t is not None:
        frame = frame + (vec({5: 1.0}),)
    return pt, frame
