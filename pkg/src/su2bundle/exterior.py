"""Exact sparse exterior algebra over an ordered coframe of dimension 5 or 6.

Forms are stored as maps from strictly increasing index tuples to Scalar
coefficients. Signs come from counting crossings when merging sorted index
tuples, so every identity that is rational in the inputs is computed exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .scalars import DEFAULT_TOL, Scalar, is_exact, scalar_eq

Index = tuple  # strictly increasing tuple of coframe indices


def _merge(a: Index, b: Index) -> Optional[tuple]:
    """Merge two strictly increasing tuples; None on a repeated index.

    Returns (sign, merged) where sign is the parity of the interleaving
    permutation.
    """
    i = j = 0
    out = []
    crossings = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        else:
            out.append(b[j])
            crossings += len(a) - i
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    sign = -1 if crossings % 2 else 1
    return sign, tuple(out)


def sort_with_sign(indices: Sequence[int]) -> Optional[tuple]:
    """Sort indices, returning (sign, sorted tuple); None on duplicates."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return None
    sign = 1
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


@dataclass(frozen=True)
class KForm:
    """Homogeneous k-form. Zero forms are empty term maps with an explicit grade."""

    dim: int
    grade: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dim not in (5, 6):
            raise ValueError(f"unsupported coframe dimension {self.dim}")
        if self.grade < 0:
            raise ValueError("negative grade")
        clean = {}
        for idx, coeff in self.terms.items():
            idx = tuple(idx)
            if len(idx) != self.grade:
                raise ValueError(f"index {idx} does not match grade {self.grade}")
            if any(not 0 <= i < self.dim for i in idx):
                raise ValueError(f"index {idx} out of range for dim {self.dim}")
            if any(idx[k] >= idx[k + 1] for k in range(len(idx) - 1)):
                raise ValueError(f"index {idx} is not strictly increasing")
            if coeff == 0:
                continue
            clean[idx] = coeff
        if clean and self.grade > self.dim:
            raise ValueError("grade exceeds dimension")
        object.__setattr__(self, "terms", clean)

    @classmethod
    def zero(cls, dim: int, grade: int) -> "KForm":
        return cls(dim, grade, {})

    @classmethod
    def from_indices(cls, dim: int, indices: Sequence[int], coeff: Scalar = 1) -> "KForm":
        """Basis monomial from possibly unsorted indices, with sign normalization."""
        sorted_ = sort_with_sign(indices)
        if sorted_ is None:
            return cls.zero(dim, len(indices))
        sign, idx = sorted_
        return cls(dim, len(idx), {idx: sign * coeff})

    def coeff(self, indices: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(indices), 0)

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(float(c)) <= tol for c in self.terms.values())

    def max_abs(self) -> float:
        return max((abs(float(c)) for c in self.terms.values()), default=0.0)

    def is_exact(self) -> bool:
        return all(is_exact(c) for c in self.terms.values())

    def __add__(self, other: "KForm") -> "KForm":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        if self.terms and other.terms and self.grade != other.grade:
            raise ValueError("grade mismatch")
        grade = self.grade if self.terms or not other.terms else other.grade
        out = dict(self.terms)
        for idx, c in other.terms.items():
            out[idx] = out.get(idx, 0) + c
        return KForm(self.dim, grade, out)

    def __neg__(self) -> "KForm":
        return KForm(self.dim, self.grade, {i: -c for i, c in self.terms.items()})

    def __sub__(self, other: "KForm") -> "KForm":
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> "KForm":
        return KForm(self.dim, self.grade, {i: c * scalar for i, c in self.terms.items()})

    __rmul__ = __mul__

    def evaluate(self, vectors: Sequence["FrameVector"]) -> Scalar:
        """Value of the form on a tuple of vectors (length must equal grade)."""
        if not self.terms:
            return 0
        if len(vectors) != self.grade:
            raise ValueError("vector count must equal grade")
        cur = self
        for v in vectors:
            if cur.grade == 0:
                break
            cur = contract(v, cur)
        return cur.terms.get((), 0)


@dataclass(frozen=True)
class FrameVector:
    """Vector over the dual frame e_0..e_{dim-1}."""

    dim: int
    components: tuple

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if len(self.components) != self.dim:
            raise ValueError("component count must equal dim")

    @classmethod
    def basis(cls, dim: int, i: int) -> "FrameVector":
        return cls(dim, tuple(1 if j == i else 0 for j in range(dim)))


def linear_combine(coeffs: Sequence[Scalar], forms: Sequence[KForm]) -> KForm:
    """Termwise linear combination; all forms must share dim and grade."""
    if len(coeffs) != len(forms):
        raise ValueError("coefficient and form counts differ")
    if not forms:
        raise ValueError("empty combination")
    dim, grade = forms[0].dim, forms[0].grade
    out: dict = {}
    for c, f in zip(coeffs, forms):
        if f.dim != dim:
            raise ValueError("dimension mismatch")
        if f.grade != grade and f.terms:
            raise ValueError("grade mismatch")
        for idx, v in f.terms.items():
            out[idx] = out.get(idx, 0) + c * v
    return KForm(dim, grade, out)


def wedge(a: KForm, b: KForm) -> KForm:
    """Antisymmetrized product; returns the zero form when the grade overflows."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    grade = a.grade + b.grade
    if grade > a.dim:
        return KForm.zero(a.dim, grade)
    out: dict = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            merged = _merge(ia, ib)
            if merged is None:
                continue
            sign, idx = merged
            out[idx] = out.get(idx, 0) + sign * ca * cb
    return KForm(a.dim, grade, out)


def contract(x: FrameVector, w: KForm) -> KForm:
    """Interior product x ⌟ w; grade drops by one."""
    if x.dim != w.dim:
        raise ValueError("dimension mismatch")
    if w.grade < 1:
        raise ValueError("cannot contract a 0-form")
    out: dict = {}
    for idx, c in w.terms.items():
        for pos, i in enumerate(idx):
            xi = x.components[i]
            if xi == 0:
                continue
            rest = idx[:pos] + idx[pos + 1 :]
            sign = -1 if pos % 2 else 1
            out[rest] = out.get(rest, 0) + sign * xi * c
    return KForm(w.dim, w.grade - 1, out)


def equals(a: KForm, b: KForm, tol: float = DEFAULT_TOL) -> bool:
    """Coefficientwise comparison; exact when both coefficients are exact."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    if a.grade != b.grade and a.terms and b.terms:
        raise ValueError("grade mismatch")
    keys = set(a.terms) | set(b.terms)
    return all(scalar_eq(a.terms.get(k, 0), b.terms.get(k, 0), tol) for k in keys)
