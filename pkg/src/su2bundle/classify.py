"""Membership of a natural structure in the named differential classes.

All class equations are stated for the unit-norm contact form
theta~ = -2p theta; substituting it fixes the signs so that the standard
structure (omega1 = dtheta, p = 1) satisfies d(theta~) = -2 omega1.
Residuals are exact zeros when every input is rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict

from .frames import InvariantForm, d_invariant
from .scalars import DEFAULT_TOL, scalar_eq
from .su2core import NaturalStructure, check_su2, metric_closed_form

# Equation labels, reused verbatim in reports.
EQ_DW1 = "d(omega1) = 0"
EQ_DTW2 = "d(theta~^omega2) = 0"
EQ_DTW3 = "d(theta~^omega3) = 0"
EQ_CONTACT = "d(theta~) = -2*omega1"
EQ_NH = "d(omega2) = 3*theta~^omega3"
EQ_NH2 = "d(theta~^omega1) = -2*omega1^omega1"
EQ_W3DUAL = "d(omega3) = -3*theta~^omega2"


@dataclass(frozen=True)
class ClassificationFlags:
    su2_valid: bool
    hypo: bool
    contact_hypo: bool
    nearly_hypo: bool
    double_hypo: bool
    sasaki_einstein: bool
    omega3_dual: bool
    g_natural: bool
    residuals: Dict[str, float]
    equation_residuals: Dict[str, float]


def _residual_ok(form: InvariantForm, tol: float) -> tuple:
    """(holds, residual) with exact-zero demanded on the exact path."""
    if form.is_exact():
        return form.is_zero_exact(), form.max_abs()
    res = form.max_abs()
    return res <= tol, res


def classify(ns: NaturalStructure, tol: float = DEFAULT_TOL) -> ClassificationFlags:
    geom = ns.geom
    w1, w2, w3 = ns.omega(1), ns.omega(2), ns.omega(3)
    tt = ns.theta_tilde()

    def d(form):
        return d_invariant(form, geom)

    residual_forms = {
        EQ_DW1: d(w1),
        EQ_DTW2: d(tt.wedge(w2)),
        EQ_DTW3: d(tt.wedge(w3)),
        EQ_CONTACT: d(tt) + 2 * w1,
        EQ_NH: d(w2) - 3 * tt.wedge(w3),
        EQ_NH2: d(tt.wedge(w1)) + 2 * w1.wedge(w1),
        EQ_W3DUAL: d(w3) + 3 * tt.wedge(w2),
    }
    holds: Dict[str, bool] = {}
    eq_res: Dict[str, float] = {}
    for label, form in residual_forms.items():
        ok, res = _residual_ok(form, tol)
        holds[label] = ok
        eq_res[label] = res

    # The containments (Sasaki-Einstein inside contact-hypo inside hypo, and
    # inside double-hypo) are identities of the calculus; enforcing them here
    # keeps the flags coherent even when float noise sits at the tolerance edge.
    sasaki_einstein = holds[EQ_CONTACT] and holds[EQ_NH] and holds[EQ_W3DUAL]
    contact_hypo = (holds[EQ_CONTACT] and holds[EQ_DTW2] and holds[EQ_DTW3]) or sasaki_einstein
    hypo = (holds[EQ_DW1] and holds[EQ_DTW2] and holds[EQ_DTW3]) or contact_hypo
    nearly_hypo = (holds[EQ_NH] and holds[EQ_NH2]) or sasaki_einstein
    double_hypo = hypo and nearly_hypo
    omega3_dual = holds[EQ_W3DUAL]

    flag_res = {
        "hypo": max(eq_res[EQ_DW1], eq_res[EQ_DTW2], eq_res[EQ_DTW3]),
        "contact_hypo": max(eq_res[EQ_CONTACT], eq_res[EQ_DTW2], eq_res[EQ_DTW3]),
        "nearly_hypo": max(eq_res[EQ_NH], eq_res[EQ_NH2]),
        "sasaki_einstein": max(eq_res[EQ_CONTACT], eq_res[EQ_NH], eq_res[EQ_W3DUAL]),
        "omega3_dual": eq_res[EQ_W3DUAL],
    }
    flag_res["double_hypo"] = max(flag_res["hypo"], flag_res["nearly_hypo"])

    return ClassificationFlags(
        su2_valid=check_su2(ns, tol).valid,
        hypo=hypo,
        contact_hypo=contact_hypo,
        nearly_hypo=nearly_hypo,
        double_hypo=double_hypo,
        sasaki_einstein=sasaki_einstein,
        omega3_dual=omega3_dual,
        g_natural=metric_closed_form(ns, tol).g_natural,
        residuals=flag_res,
        equation_residuals=eq_res,
    )


def curvature_guards(ns: NaturalStructure, tol: float = DEFAULT_TOL) -> list:
    """Structural notes on which closedness preconditions the coefficients meet."""
    notes = []
    a0, a1, a2, a3 = ns.a
    K, s2 = ns.geom.K, ns.geom.s2
    if a0 == 0 and a1 == 0 and a2 == 0 and a3 != 0:
        notes.append("type I shape: omega1 = a3*dtheta")
    elif a1 == 0 and a2 != 0 and scalar_eq(a0, K * a2 * s2, tol):
        notes.append("type II shape, K = a0/(a2*s2) consistent")
    if a1 != 0:
        notes.append("domega1 != 0 for all K (a1 != 0)")
    elif a2 != 0 and not scalar_eq(a0, K * a2 * s2, tol):
        notes.append("domega1 != 0: a0 != K*a2*s2")
    elif a2 == 0 and a0 != 0:
        notes.append("domega1 != 0: a0 != 0 with a2 = 0")
    b3, c3 = ns.b[3], ns.c[3]
    notes.append("b3 = 0: theta^omega2 can close" if b3 == 0 else "b3 != 0: d(theta~^omega2) != 0")
    notes.append("c3 = 0: theta^omega3 can close" if c3 == 0 else "c3 != 0: d(theta~^omega3) != 0")
    return notes
