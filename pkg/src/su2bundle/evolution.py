"""Evolution of type I hypo families and the induced structure on the
product with a time axis.

With theta~ = -2P theta, omega1 = A3 dtheta and omega2, omega3 spanned by
alpha0, alpha1, alpha2, the evolution system reads

    dA3/dt     = 2P
    d(P C0)/dt = K B1          d(P B0)/dt = -K C1
    d(P C1)/dt = (s2 K B2 - B0)/(2 s2)
    d(P B1)/dt = -(s2 K C2 - C0)/(2 s2)
    d(P C2)/dt = -B1/s2        d(P B2)/dt = C1/s2

P(t) is an input (seven equations for eight unknowns). The flat case K = 0
has the closed-form polynomial solution implemented in flat_solution; the
general case is handled by a classical fourth-order one-step integrator
that reports constraint-manifold drift instead of enforcing it.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .errors import ConstraintViolation
from .frames import GeometryParams, InvariantForm, d_extended
from .poly import Poly
from .scalars import DEFAULT_TOL, Scalar, is_exact
from .su2core import NaturalStructure

CONSTRAINT_LABELS = (
    "B1^2 - B0*B2 = A3^2",
    "C1^2 - C0*C2 = A3^2",
    "B0*C2 + B2*C0 - 2*B1*C1 = 0",
)
FLAT_CONSTRAINT_LABELS = (
    "p > 0",
    "b0^2 + c0^2 = 16*p^4*s2^2",
    "b4*c0 - b0*c4 = 4*p^2*s2*a4",
    "b4^2 - b0*b5 = a4^2",
    "c4^2 - c0*c5 = a4^2",
    "b0*c5 + b5*c0 - 2*b4*c4 = 0",
)

COMPONENTS = ("A3", "B0", "B1", "B2", "C0", "C1", "C2")


@dataclass(frozen=True)
class EvolutionState:
    """Time-dependent coefficients as exact polynomials in t."""

    P: Poly
    A3: Poly
    B0: Poly
    B1: Poly
    B2: Poly
    C0: Poly
    C1: Poly
    C2: Poly

    def component(self, name: str) -> Poly:
        return getattr(self, name)

    def at(self, t: Scalar) -> dict:
        return {name: getattr(self, name)(t) for name in ("P",) + COMPONENTS}

    def is_exact(self) -> bool:
        return all(getattr(self, n).is_exact() for n in ("P",) + COMPONENTS)


@dataclass(frozen=True)
class SU3Structure:
    """Almost-Hermitian data (F, Psi+, Psi-) on the product with the t-axis."""

    F: InvariantForm
    psi_plus: InvariantForm
    psi_minus: InvariantForm


def evolution_rhs(state: EvolutionState, geom: GeometryParams) -> dict:
    """Right-hand sides of the seven evolved quantities, as polynomials."""
    K, s2 = geom.K, geom.s2
    inv_2s2 = Fraction(1, 2) / Fraction(s2) if is_exact(s2) else 0.5 / s2
    inv_s2 = Fraction(1) / Fraction(s2) if is_exact(s2) else 1.0 / s2
    return {
        "A3": state.P * 2,
        "PC0": state.B1 * K,
        "PC1": (state.B2 * (s2 * K) - state.B0) * inv_2s2,
        "PC2": -(state.B1 * inv_s2),
        "PB0": -(state.C1 * K),
        "PB1": -((state.C2 * (s2 * K) - state.C0) * inv_2s2),
        "PB2": state.C1 * inv_s2,
    }


def evolution_residuals(state: EvolutionState, geom: GeometryParams) -> dict:
    """d/dt(combination) minus right-hand side; zero polynomials on solutions."""
    rhs = evolution_rhs(state, geom)
    combos = {
        "A3": state.A3,
        "PC0": state.P * state.C0,
        "PC1": state.P * state.C1,
        "PC2": state.P * state.C2,
        "PB0": state.P * state.B0,
        "PB1": state.P * state.B1,
        "PB2": state.P * state.B2,
    }
    return {key: combos[key].deriv() - rhs[key] for key in combos}


def constraint_residual_polys(state: EvolutionState) -> dict:
    a3sq = state.A3 * state.A3
    return {
        CONSTRAINT_LABELS[0]: state.B1 * state.B1 - state.B0 * state.B2 - a3sq,
        CONSTRAINT_LABELS[1]: state.C1 * state.C1 - state.C0 * state.C2 - a3sq,
        CONSTRAINT_LABELS[2]: state.B0 * state.C2 + state.B2 * state.C0 - state.B1 * state.C1 * 2,
    }


def flat_solution(p: Scalar, a4: Scalar, b0: Scalar, c0: Scalar, b4: Scalar,
                  c4: Scalar, b5: Scalar, c5: Scalar, s2: Scalar,
                  tol: float = DEFAULT_TOL) -> EvolutionState:
    """Closed-form polynomial solution over a flat base (K = 0), constant P = p."""
    if not p > 0:
        raise ConstraintViolation(FLAT_CONSTRAINT_LABELS[0])

    def _check(label: str, lhs: Scalar, rhs: Scalar):
        exact = is_exact(lhs) and is_exact(rhs)
        if (exact and lhs != rhs) or (not exact and abs(float(lhs) - float(rhs)) > tol):
            raise ConstraintViolation(label, f"left {float(lhs)!r}, right {float(rhs)!r}")

    _check(FLAT_CONSTRAINT_LABELS[1], b0 * b0 + c0 * c0, 16 * p ** 4 * s2 * s2)
    _check(FLAT_CONSTRAINT_LABELS[2], b4 * c0 - b0 * c4, 4 * p * p * s2 * a4)
    _check(FLAT_CONSTRAINT_LABELS[3], b4 * b4 - b0 * b5, a4 * a4)
    _check(FLAT_CONSTRAINT_LABELS[4], c4 * c4 - c0 * c5, a4 * a4)
    _check(FLAT_CONSTRAINT_LABELS[5], b0 * c5 + b5 * c0 - 2 * b4 * c4, 0)

    def _div(num, den):
        if is_exact(num) and is_exact(den):
            return Fraction(num) / Fraction(den)
        return float(num) / float(den)

    two_ps2 = 2 * p * s2
    four_p2s4 = 4 * p * p * s2 * s2
    return EvolutionState(
        P=Poly.const(p),
        A3=Poly((a4, 2 * p)),
        B0=Poly.const(b0),
        B1=Poly((b4, _div(c0, two_ps2))),
        B2=Poly((b5, _div(c4, p * s2), -_div(b0, four_p2s4))),
        C0=Poly.const(c0),
        C1=Poly((c4, -_div(b0, two_ps2))),
        C2=Poly((c5, -_div(b4, p * s2), -_div(c0, four_p2s4))),
    )


def build_su3(source: Union[EvolutionState, NaturalStructure], mode: str,
              tol: float = DEFAULT_TOL, strict: bool = True) -> SU3Structure:
    """F and Psi of the product structure.

    general: from a polynomial evolution family,
        F = omega1 + theta~ ∧ dt,  Psi = (omega2 + i omega3) ∧ (theta~ + i dt).
    conical: from a Sasaki-Einstein structure (K = 9 s2 required),
        F = t^2 omega1 + t theta~ ∧ dt,  Psi = t^2 phi ∧ (t theta~ + i dt).

    strict=False lifts the conical curvature gate so the closure failure of a
    non-Sasaki-Einstein input can be exhibited through check_integrable.
    """
    dt = InvariantForm.dt()
    if mode == "general":
        if not isinstance(source, EvolutionState):
            raise ValueError("general mode needs an EvolutionState")
        w1 = InvariantForm.two_form((0, 0, 0, 1), 6) * source.A3
        w2 = InvariantForm.two_form((source.B0, source.B1, source.B2, 0), 6)
        w3 = InvariantForm.two_form((source.C0, source.C1, source.C2, 0), 6)
        tt = InvariantForm.theta(6) * (source.P * -2)
        F = w1 + tt.wedge(dt)
        psi_plus = w2.wedge(tt) - w3.wedge(dt)
        psi_minus = w2.wedge(dt) + w3.wedge(tt)
    elif mode == "conical":
        if not isinstance(source, NaturalStructure):
            raise ValueError("conical mode needs a NaturalStructure")
        K, s2 = source.geom.K, source.geom.s2
        exact = is_exact(K) and is_exact(s2)
        off_curvature = (exact and K != 9 * s2) or (not exact and abs(float(K) - 9 * float(s2)) > tol)
        if strict and off_curvature:
            raise ConstraintViolation("K = 9*s2", "conical lift needs the Sasaki-Einstein curvature")
        t1, t2, t3 = Poly.t(), Poly.t() * Poly.t(), Poly.t() * Poly.t() * Poly.t()
        w1 = source.omega(1, 6)
        w2 = source.omega(2, 6)
        w3 = source.omega(3, 6)
        tt = source.theta_tilde(6)
        F = w1 * t2 + tt.wedge(dt) * t1
        psi_plus = w2.wedge(tt) * t3 - w3.wedge(dt) * t2
        psi_minus = w2.wedge(dt) * t2 + w3.wedge(tt) * t3
    else:
        raise ValueError(f"unknown mode {mode!r}")

    fff = F.wedge(F).wedge(F)
    if fff.is_zero(1e-15):
        raise ArithmeticError("F^3 vanishes; degenerate family")
    for name, psi in (("psi_plus", psi_plus), ("psi_minus", psi_minus)):
        if not psi.wedge(F).is_zero(max(tol, 1e-9)):
            raise ArithmeticError(f"{name} ∧ F does not vanish; inconsistent family")
    return SU3Structure(F=F, psi_plus=psi_plus, psi_minus=psi_minus)


def check_integrable(su3: SU3Structure, geom: GeometryParams) -> dict:
    """Max absolute coefficient of dF, dPsi+, dPsi-; exact zeros when exact."""
    return {
        "d(F) = 0": d_extended(su3.F, geom).max_abs(),
        "d(psi_plus) = 0": d_extended(su3.psi_plus, geom).max_abs(),
        "d(psi_minus) = 0": d_extended(su3.psi_minus, geom).max_abs(),
    }


# -- numeric integration ------------------------------------------------------

@dataclass
class IntegrationResult:
    rows: list  # (t, P, A3, B0, B1, B2, C0, C1, C2, res_B, res_C, res_orth)
    halted: bool
    diagnostic: Optional[str]
    max_drift: dict

    def final(self) -> dict:
        t, P, A3, B0, B1, B2, C0, C1, C2, *_ = self.rows[-1]
        return {"t": t, "P": P, "A3": A3, "B0": B0, "B1": B1, "B2": B2,
                "C0": C0, "C1": C1, "C2": C2}


CSV_HEADER = ("t", "P", "A3", "B0", "B1", "B2", "C0", "C1", "C2",
              "res_B", "res_C", "res_orth")


def _row(t: float, P: float, vals: dict) -> tuple:
    A3, B0, B1, B2 = vals["A3"], vals["B0"], vals["B1"], vals["B2"]
    C0, C1, C2 = vals["C0"], vals["C1"], vals["C2"]
    res_b = B1 * B1 - B0 * B2 - A3 * A3
    res_c = C1 * C1 - C0 * C2 - A3 * A3
    res_o = B0 * C2 + B2 * C0 - 2 * B1 * C1
    return (t, P, A3, B0, B1, B2, C0, C1, C2, res_b, res_c, res_o)


def integrate_numeric(init: EvolutionState, P_of_t: Optional[Callable[[float], float]],
                      geom: GeometryParams, t_end: float, step: float,
                      tol: float = 1e-7) -> IntegrationResult:
    """Classical fourth-order fixed-step integration of the evolution system.

    The state vector is (A3, P*C0, P*C1, P*C2, P*B0, P*B1, P*B2); the B and C
    values are recovered by dividing by P(t). Constraint residuals are
    evaluated per step and reported, never enforced. Integration halts with a
    diagnostic if A3 crosses zero.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if t_end < 0:
        raise ValueError("t_end must be nonnegative")
    K, s2 = float(geom.K), float(geom.s2)
    if P_of_t is None:
        p_poly = init.P
        P_of_t = lambda t: float(p_poly(t))

    start = init.at(0)
    vals0 = {k: float(v) for k, v in start.items()}
    P0 = P_of_t(0.0)
    if abs(P0) < 1e-14:
        raise ConstraintViolation("P != 0")
    # A3(0) = 0 is admitted when A3 is immediately increasing (conical starts).
    if vals0["A3"] < 0 or (vals0["A3"] == 0 and not P0 > 0):
        raise ConstraintViolation("A3 > 0")
    init_row = _row(0.0, P0, vals0)
    for label, res in zip(CONSTRAINT_LABELS, init_row[9:]):
        if abs(res) > tol:
            raise ConstraintViolation(label, f"initial residual {res!r}")

    def rhs(t: float, y: tuple) -> tuple:
        P = P_of_t(t)
        B0, B1, B2 = y[4] / P, y[5] / P, y[6] / P
        C0, C1, C2 = y[1] / P, y[2] / P, y[3] / P
        return (
            2.0 * P,
            K * B1,
            (s2 * K * B2 - B0) / (2.0 * s2),
            -B1 / s2,
            -K * C1,
            -(s2 * K * C2 - C0) / (2.0 * s2),
            C1 / s2,
        )

    def unpack(t: float, y: tuple) -> dict:
        P = P_of_t(t)
        return {"A3": y[0], "C0": y[1] / P, "C1": y[2] / P, "C2": y[3] / P,
                "B0": y[4] / P, "B1": y[5] / P, "B2": y[6] / P}

    y = (vals0["A3"], P0 * vals0["C0"], P0 * vals0["C1"], P0 * vals0["C2"],
         P0 * vals0["B0"], P0 * vals0["B1"], P0 * vals0["B2"])
    n_steps = max(0, round(t_end / step))
    rows = [init_row]
    halted = False
    diagnostic = None
    t = 0.0
    for k in range(n_steps):
        h = step
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, tuple(yi + h / 2 * ki for yi, ki in zip(y, k1)))
        k3 = rhs(t + h / 2, tuple(yi + h / 2 * ki for yi, ki in zip(y, k2)))
        k4 = rhs(t + h, tuple(yi + h * ki for yi, ki in zip(y, k3)))
        y = tuple(yi + h / 6 * (a + 2 * b + 2 * c + d)
                  for yi, a, b, c, d in zip(y, k1, k2, k3, k4))
        t = (k + 1) * step
        vals = unpack(t, y)
        rows.append(_row(t, P_of_t(t), vals))
        if not vals["A3"] > 0:
            halted = True
            diagnostic = f"A3 reached {vals['A3']!r} at t = {t!r}; structure degenerates"
            break
    drift = {
        label: max(abs(r[9 + i]) for r in rows)
        for i, label in enumerate(CONSTRAINT_LABELS)
    }
    return IntegrationResult(rows=rows, halted=halted, diagnostic=diagnostic, max_drift=drift)


def sample_closed_form(state: EvolutionState, t_end: float, n: int) -> IntegrationResult:
    """Sample a polynomial trajectory on an even grid, with residual columns."""
    if n < 1:
        raise ValueError("need at least one sample")
    rows = []
    for k in range(n):
        t = t_end * k / (n - 1) if n > 1 else 0.0
        vals = {name: float(v) for name, v in state.at(t).items()}
        rows.append(_row(t, vals["P"], vals))
    drift = {
        label: max(abs(r[9 + i]) for r in rows)
        for i, label in enumerate(CONSTRAINT_LABELS)
    }
    return IntegrationResult(rows=rows, halted=False, diagnostic=None, max_drift=drift)


def write_trajectory_csv(result: IntegrationResult, path) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_HEADER)
        for row in result.rows:
            writer.writerow([repr(float(v)) for v in row])
