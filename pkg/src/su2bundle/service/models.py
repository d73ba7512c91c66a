"""Request and response models shared by the HTTP service and the CLI.

Scalar fields accept ints (exact), floats, or strings like "1/3" that parse
to exact rationals; responses encode exact rationals back to such strings,
so a report re-parses to the same values.
"""
from __future__ import annotations

from typing import Annotated, Dict, List, Optional, Union

from pydantic import AfterValidator, BaseModel, ConfigDict, Field, model_validator

from ..frames import GeometryParams
from ..scalars import parse_scalar
from ..su2core import NaturalStructure


def _must_parse(value):
    parse_scalar(value)  # raises ValueError on strings that are not rationals
    return value


ScalarIn = Annotated[Union[int, float, str], AfterValidator(_must_parse)]
ScalarOut = Union[int, float, str]


class _Base(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GeometryIn(_Base):
    """Curvature plus radius, given either as s or as s2 (s2 wins if both)."""

    K: ScalarIn = 0
    s: Optional[ScalarIn] = None
    s2: Optional[ScalarIn] = None

    def to_geometry(self) -> GeometryParams:
        K = parse_scalar(self.K)
        if self.s2 is not None:
            return GeometryParams(K=K, s2=parse_scalar(self.s2))
        if self.s is not None:
            return GeometryParams.from_radius(K=K, s=parse_scalar(self.s))
        return GeometryParams(K=K, s2=1)


class StructureIn(GeometryIn):
    """Full coefficient payload of a natural structure."""

    p: ScalarIn = 1
    a0: ScalarIn = 0
    a1: ScalarIn = 0
    a2: ScalarIn = 0
    a3: ScalarIn = 0
    b0: ScalarIn = 0
    b1: ScalarIn = 0
    b2: ScalarIn = 0
    b3: ScalarIn = 0
    c0: ScalarIn = 0
    c1: ScalarIn = 0
    c2: ScalarIn = 0
    c3: ScalarIn = 0
    tol: float = 1e-9

    def to_structure(self) -> NaturalStructure:
        s = parse_scalar
        return NaturalStructure(
            p=s(self.p),
            a=(s(self.a0), s(self.a1), s(self.a2), s(self.a3)),
            b=(s(self.b0), s(self.b1), s(self.b2), s(self.b3)),
            c=(s(self.c0), s(self.c1), s(self.c2), s(self.c3)),
            geom=self.to_geometry(),
        )


class SolveType1In(GeometryIn):
    X: ScalarIn = 0
    Y: ScalarIn = 0
    A: ScalarIn = 0
    B: ScalarIn = 1
    tol: float = 1e-9


class SolveType1NHIn(GeometryIn):
    b0: ScalarIn = 0
    b1: ScalarIn = 0
    b2: ScalarIn = 0
    tol: float = 1e-9


class SolveSEIn(GeometryIn):
    b2: ScalarIn = 0
    sign_q: int = 1
    tol: float = 1e-9


class SolveType2In(_Base):
    a0: ScalarIn = 0
    a2: ScalarIn = 0
    a3: ScalarIn = 0
    p: ScalarIn = 1
    b0: ScalarIn = 0
    sign_b1: int = 1
    s: Optional[ScalarIn] = None
    s2: Optional[ScalarIn] = None
    tol: float = 1e-9


class EvolveFlatIn(GeometryIn):
    p: ScalarIn = "1/2"
    a4: ScalarIn = 0
    b0: ScalarIn = -1
    c0: ScalarIn = 0
    b4: ScalarIn = 0
    c4: ScalarIn = 0
    b5: ScalarIn = 0
    c5: ScalarIn = 0
    t_end: float = 1.0
    samples: int = 101
    tol: float = 1e-9

    @model_validator(mode="after")
    def _flat_only(self):
        if parse_scalar(self.K) != 0:
            raise ValueError("the closed-form evolution needs K = 0")
        return self


class EvolveNumericIn(GeometryIn):
    a3: ScalarIn = 1
    b0: ScalarIn = 0
    b1: ScalarIn = 0
    b2: ScalarIn = 0
    c0: ScalarIn = 0
    c1: ScalarIn = 0
    c2: ScalarIn = 0
    P0: ScalarIn = 1
    P1: ScalarIn = 0
    t_end: float = 1.0
    step: float = 1e-3
    tol: float = 1e-7


class VerifyIn(_Base):
    samples: int = Field(default=100, ge=0)
    seed: int = 0
    tol: float = 1e-9  # accepted for interface symmetry; reports carry raw residuals


class CheckItem(_Base):
    label: str
    residual: Optional[ScalarOut] = None
    ok: bool


class SU2CheckOut(_Base):
    valid: bool
    nu: ScalarOut
    violations: List[str]


class MetricOut(_Base):
    g11: ScalarOut
    g13: ScalarOut
    g23: ScalarOut
    g33: ScalarOut
    g00: ScalarOut
    minor: ScalarOut
    det: ScalarOut
    positive_definite: bool
    g_natural: bool
    matrix: List[List[ScalarOut]]


class StructureOut(_Base):
    p: ScalarOut
    a: List[ScalarOut]
    b: List[ScalarOut]
    c: List[ScalarOut]
    K: ScalarOut
    s2: ScalarOut
    nu: ScalarOut


class ClassifyOut(_Base):
    command: str
    input: dict
    su2: SU2CheckOut
    flags: Dict[str, bool]
    residuals: Dict[str, ScalarOut]
    equation_residuals: Dict[str, ScalarOut]
    metric: MetricOut
    guards: List[str]
    checks: List[CheckItem]


class MetricReportOut(_Base):
    command: str
    input: dict
    su2: SU2CheckOut
    metric: MetricOut
    phi: Optional[Dict[str, List[List[ScalarOut]]]] = None
    preserves: Optional[Dict[str, Dict[str, bool]]] = None
    checks: List[CheckItem]


class SolveOut(_Base):
    command: str
    input: dict
    structure: StructureOut
    flags: Dict[str, bool]
    metric: MetricOut
    system_residuals: dict
    checks: List[CheckItem]


class EvolveFlatOut(_Base):
    command: str
    input: dict
    state: Dict[str, List[ScalarOut]]
    rhs_residuals: Dict[str, ScalarOut]
    constraint_residuals: Dict[str, ScalarOut]
    su3: Dict[str, Dict[str, List[ScalarOut]]]
    integrability: Dict[str, ScalarOut]
    checks: List[CheckItem]


class EvolveNumericOut(_Base):
    command: str
    input: dict
    steps: int
    t_end: float
    final: Dict[str, float]
    max_constraint_drift: Dict[str, float]
    halted: bool
    diagnostic: Optional[str] = None


class VerifyOut(_Base):
    command: str
    samples: int
    seed: int
    identities: Dict[str, float]
    max_residual: float
    ad_vs_fd: Optional[float] = None
    chart_disagreement: Optional[float] = None


class ErrorOut(_Base):
    label: str
    message: str
