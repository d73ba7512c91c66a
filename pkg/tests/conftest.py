"""Shared test helpers: an independent dense alternating-tensor oracle and
random generators for valid structures."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from su2bundle.exterior import KForm, sort_with_sign
from su2bundle.families import TypeIParams, type1_from_parameters
from su2bundle.frames import GeometryParams
from su2bundle.su2core import NaturalStructure


# -- dense alternating-tensor oracle ------------------------------------------
# Independent implementation of wedge and interior product: components on all
# sorted index tuples, products by subset splitting instead of sorted merges.

class DenseForm:
    def __init__(self, dim, grade, comps=None):
        self.dim = dim
        self.grade = grade
        self.comps = dict(comps or {})  # sorted tuple -> coefficient

    @classmethod
    def from_kform(cls, f: KForm) -> "DenseForm":
        return cls(f.dim, f.grade, dict(f.terms))

    def at(self, indices) -> object:
        """Component on an arbitrary tuple, antisymmetrized."""
        hit = sort_with_sign(indices)
        if hit is None:
            return 0
        sign, idx = hit
        return sign * self.comps.get(idx, 0)

    def to_kform(self) -> KForm:
        return KForm(self.dim, self.grade, dict(self.comps))


def dense_wedge(a: DenseForm, b: DenseForm) -> DenseForm:
    """(a ∧ b)[S] by summing over splittings of S into a p-subset and its
    complement, with the shuffle sign."""
    p, q = a.grade, b.grade
    out = {}
    for s in itertools.combinations(range(a.dim), p + q):
        total = 0
        for picks in itertools.combinations(range(p + q), p):
            left = tuple(s[i] for i in picks)
            right = tuple(s[i] for i in range(p + q) if i not in picks)
            sign = _shuffle_sign(s, picks)
            total += sign * a.comps.get(left, 0) * b.comps.get(right, 0)
        if total != 0:
            out[s] = total
    return DenseForm(a.dim, p + q, out)


def _shuffle_sign(s, picks):
    """Sign of the permutation moving the picked positions to the front."""
    sign = 1
    picked = list(picks)
    for rank, pos in enumerate(picked):
        sign *= (-1) ** (pos - rank)
    return sign


def dense_contract(x_components, w: DenseForm) -> DenseForm:
    """(x ⌟ w)[i_1..i_{k-1}] = sum_j x_j w(j, i_1, .., i_{k-1})."""
    out = {}
    for rest in itertools.combinations(range(w.dim), w.grade - 1):
        total = 0
        for j in range(w.dim):
            xj = x_components[j]
            if xj == 0:
                continue
            total += xj * w.at((j,) + rest)
        if total != 0:
            out[rest] = total
    return DenseForm(w.dim, w.grade - 1, out)


# -- random generators ---------------------------------------------------------

def rational(rng: random.Random, lo=-3, hi=3, max_den=4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_geometry(rng: random.Random) -> GeometryParams:
    K = rational(rng, -3, 5)
    s2 = abs(rational(rng, 1, 6)) + Fraction(1, 7)
    return GeometryParams(K=K, s2=s2)


def random_kform(rng: random.Random, dim: int, grade: int, n_terms: int = 3,
                 exact: bool = True) -> KForm:
    terms = {}
    for _ in range(n_terms):
        idx = tuple(sorted(rng.sample(range(dim), grade)))
        coeff = rational(rng) if exact else rng.uniform(-3, 3)
        terms[idx] = terms.get(idx, 0) + coeff
    return KForm(dim, grade, terms)


def type1_surface_point_exact(rng: random.Random) -> TypeIParams:
    """Exact rational point of the type I constraint surface, via the
    rational circle parametrization (X, Y) = lam * ((1-m^2), 2m)/(1+m^2)."""
    A = rational(rng, -2, 2, 3)
    B = abs(rational(rng, 1, 4, 3)) + Fraction(1, 5)
    m = rational(rng, -3, 3, 3)
    lam = Fraction(1) / (B * (1 + A * A))
    denom = 1 + m * m
    X = lam * (1 - m * m) / denom
    Y = lam * 2 * m / denom
    return TypeIParams(X=X, Y=Y, A=A, B=B)


def rotation_from_quaternion(q) -> list:
    """Rational rotation matrix from an integer quaternion (w, x, y, z)."""
    w, x, y, z = q
    n = Fraction(w * w + x * x + y * y + z * z)
    return [
        [(w * w + x * x - y * y - z * z) / n, 2 * (x * y - w * z) / n, 2 * (x * z + w * y) / n],
        [2 * (x * y + w * z) / n, (w * w - x * x + y * y - z * z) / n, 2 * (y * z - w * x) / n],
        [2 * (x * z - w * y) / n, 2 * (y * z + w * x) / n, (w * w - x * x - y * y + z * z) / n],
    ]


def random_valid_structure(rng: random.Random, exact: bool = True) -> NaturalStructure:
    """Random valid structure: a type I seed, scaled and rotated in the
    (omega1, omega2, omega3) triple. Rotations preserve validity and scaling
    by a positive factor keeps positivity, so every output passes check_su2."""
    base = type1_from_parameters(type1_surface_point_exact(rng), random_geometry(rng))
    quads = [list(base.a), list(base.b), list(base.c)]
    lam = abs(rational(rng, 1, 3)) + Fraction(1, 5)
    if not exact:
        lam = float(lam) * (1 + rng.uniform(-0.01, 0.01))
    quads = [[lam * v for v in quad] for quad in quads]
    q = tuple(rng.randint(-3, 3) for _ in range(4))
    if not any(q):
        q = (1, 0, 0, 0)
    rot = rotation_from_quaternion(q)
    if not exact:
        rot = [[float(v) for v in row] for row in rot]
    rotated = [
        [sum(rot[i][j] * quads[j][k] for j in range(3)) for k in range(4)]
        for i in range(3)
    ]
    return NaturalStructure(
        p=base.p, a=tuple(rotated[0]), b=tuple(rotated[1]), c=tuple(rotated[2]),
        geom=base.geom,
    )
