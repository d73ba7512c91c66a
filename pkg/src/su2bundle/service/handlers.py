"""Command handlers: one function per endpoint, shared by HTTP and CLI."""
from __future__ import annotations

from .. import evolution, families, oracle
from ..classify import classify as run_classify
from ..classify import curvature_guards
from ..errors import ConstraintViolation
from ..frames import mono_label
from ..poly import Poly
from ..scalars import encode_scalar, parse_scalar
from ..su2core import (
    NaturalStructure,
    check_su2,
    metric_closed_form,
    phi_matrices,
    preservation_flags,
)
from . import models


def _enc(value):
    return encode_scalar(value)


def _enc_matrix(matrix):
    return [[_enc(v) for v in row] for row in matrix]


def _metric_out(report) -> models.MetricOut:
    return models.MetricOut(
        g11=_enc(report.g11), g13=_enc(report.g13), g23=_enc(report.g23),
        g33=_enc(report.g33), g00=_enc(report.g00), minor=_enc(report.minor),
        det=_enc(report.det), positive_definite=report.positive_definite,
        g_natural=report.g_natural, matrix=_enc_matrix(report.matrix),
    )


def _su2_out(chk) -> models.SU2CheckOut:
    return models.SU2CheckOut(valid=chk.valid, nu=_enc(chk.nu), violations=list(chk.violations))


def _structure_out(ns: NaturalStructure) -> models.StructureOut:
    return models.StructureOut(
        p=_enc(ns.p),
        a=[_enc(v) for v in ns.a],
        b=[_enc(v) for v in ns.b],
        c=[_enc(v) for v in ns.c],
        K=_enc(ns.geom.K),
        s2=_enc(ns.geom.s2),
        nu=_enc(ns.nu),
    )


def _flag_dict(flags) -> dict:
    return {
        "su2_valid": flags.su2_valid,
        "hypo": flags.hypo,
        "contact_hypo": flags.contact_hypo,
        "nearly_hypo": flags.nearly_hypo,
        "double_hypo": flags.double_hypo,
        "sasaki_einstein": flags.sasaki_einstein,
        "omega3_dual": flags.omega3_dual,
        "g_natural": flags.g_natural,
    }


def _class_checks(flags, chk, tol: float) -> list:
    items = [
        models.CheckItem(label=label, residual=_enc(res), ok=res <= tol)
        for label, res in sorted(flags.equation_residuals.items())
    ]
    items.extend(
        models.CheckItem(label=v, residual=None, ok=False) for v in chk.violations
    )
    return items


def _input_echo(req) -> dict:
    return req.model_dump(exclude_none=True)


def do_classify(req: models.StructureIn) -> models.ClassifyOut:
    ns = req.to_structure()
    chk = check_su2(ns, req.tol)
    flags = run_classify(ns, req.tol)
    report = metric_closed_form(ns, req.tol)
    return models.ClassifyOut(
        command="classify",
        input=_input_echo(req),
        su2=_su2_out(chk),
        flags=_flag_dict(flags),
        residuals={k: _enc(v) for k, v in sorted(flags.residuals.items())},
        equation_residuals={k: _enc(v) for k, v in sorted(flags.equation_residuals.items())},
        metric=_metric_out(report),
        guards=curvature_guards(ns, req.tol),
        checks=_class_checks(flags, chk, req.tol),
    )


def do_metric(req: models.StructureIn) -> models.MetricReportOut:
    ns = req.to_structure()
    chk = check_su2(ns, req.tol)
    report = metric_closed_form(ns, req.tol)
    phi = None
    preserves = None
    if chk.valid:
        triple = phi_matrices(ns, req.tol)
        phi = {f"phi{i}": _enc_matrix(triple.get(i)) for i in (1, 2, 3)}
        preserves = preservation_flags(ns, req.tol).as_dict()
    checks = [
        models.CheckItem(label="g11 > 0", residual=_enc(report.g11), ok=report.g11 > 0),
        models.CheckItem(label="g11*g33 - g13^2 - g23^2 > 0",
                         residual=_enc(report.minor), ok=report.minor > 0),
        models.CheckItem(label="det G = (g11*g33 - g13^2 - g23^2)^2",
                         residual=_enc(report.det), ok=True),
    ]
    return models.MetricReportOut(
        command="metric", input=_input_echo(req), su2=_su2_out(chk),
        metric=_metric_out(report), phi=phi, preserves=preserves, checks=checks,
    )


def _solve_out(command: str, req, ns: NaturalStructure, tol: float) -> models.SolveOut:
    flags = run_classify(ns, tol)
    report = metric_closed_form(ns, tol)
    systems = families.verify_named_systems(ns, tol)
    checks = _class_checks(flags, check_su2(ns, tol), tol)
    return models.SolveOut(
        command=command,
        input=_input_echo(req),
        structure=_structure_out(ns),
        flags=_flag_dict(flags),
        metric=_metric_out(report),
        system_residuals=systems,
        checks=checks,
    )


def do_solve_type1(req: models.SolveType1In) -> models.SolveOut:
    tp = families.TypeIParams(
        X=parse_scalar(req.X), Y=parse_scalar(req.Y),
        A=parse_scalar(req.A), B=parse_scalar(req.B),
    )
    ns = families.type1_from_parameters(tp, req.to_geometry(), req.tol)
    return _solve_out("solve-type1", req, ns, req.tol)


def do_solve_type1_nh(req: models.SolveType1NHIn) -> models.SolveOut:
    ns = families.type1_nearly_hypo(
        parse_scalar(req.b0), parse_scalar(req.b1), parse_scalar(req.b2),
        req.to_geometry(), req.tol,
    )
    return _solve_out("solve-type1-nh", req, ns, req.tol)


def do_solve_se(req: models.SolveSEIn) -> models.SolveOut:
    geom = req.to_geometry()
    K_in = parse_scalar(req.K)
    if K_in != 0 and abs(float(K_in) - 9 * float(geom.s2)) > max(req.tol, 1e-12):
        raise ConstraintViolation("K = 9*s2", "the family fixes the curvature from the radius")
    ns = families.sasaki_einstein_family(geom.s2, parse_scalar(req.b2), req.sign_q, req.tol)
    return _solve_out("solve-se", req, ns, req.tol)


def do_solve_type2(req: models.SolveType2In) -> models.SolveOut:
    tp = families.TypeIIParams(
        a0=parse_scalar(req.a0), a2=parse_scalar(req.a2), a3=parse_scalar(req.a3),
        p=parse_scalar(req.p), b0=parse_scalar(req.b0), sign_b1=req.sign_b1,
    )
    expected_s2 = None
    if req.s2 is not None:
        expected_s2 = parse_scalar(req.s2)
    elif req.s is not None:
        s = parse_scalar(req.s)
        expected_s2 = s * s
    ns = families.type2_double_hypo(tp, expected_s2, req.tol)
    return _solve_out("solve-type2", req, ns, req.tol)


def _form_dict(form) -> dict:
    return {mono_label(m): [_enc(c) for c in poly.coeffs]
            for m, poly in sorted(form.terms.items())}


def do_evolve_flat(req: models.EvolveFlatIn) -> tuple:
    """Returns (report, sampled trajectory) so the CLI can export CSV."""
    geom = req.to_geometry()
    state = evolution.flat_solution(
        parse_scalar(req.p), parse_scalar(req.a4), parse_scalar(req.b0),
        parse_scalar(req.c0), parse_scalar(req.b4), parse_scalar(req.c4),
        parse_scalar(req.b5), parse_scalar(req.c5), geom.s2, req.tol,
    )
    rhs_res = evolution.evolution_residuals(state, geom)
    con_res = evolution.constraint_residual_polys(state)
    su3 = evolution.build_su3(state, "general", req.tol)
    integ = evolution.check_integrable(su3, geom)
    trajectory = evolution.sample_closed_form(state, req.t_end, req.samples)
    checks = [
        models.CheckItem(label=f"evolution residual d/dt({k})", residual=_enc(v.max_abs()),
                         ok=v.is_zero()) for k, v in sorted(rhs_res.items())
    ]
    checks.extend(
        models.CheckItem(label=k, residual=_enc(v.max_abs()), ok=v.is_zero())
        for k, v in con_res.items()
    )
    report = models.EvolveFlatOut(
        command="evolve-flat",
        input=_input_echo(req),
        state={name: [_enc(c) for c in state.component(name).coeffs]
               for name in ("P",) + evolution.COMPONENTS},
        rhs_residuals={k: _enc(v.max_abs()) for k, v in sorted(rhs_res.items())},
        constraint_residuals={k: _enc(v.max_abs()) for k, v in con_res.items()},
        su3={"F": _form_dict(su3.F), "psi_plus": _form_dict(su3.psi_plus),
             "psi_minus": _form_dict(su3.psi_minus)},
        integrability={k: _enc(v) for k, v in integ.items()},
        checks=checks,
    )
    return report, trajectory


def do_evolve_numeric(req: models.EvolveNumericIn) -> tuple:
    """Returns (report, integration result) so the CLI can export CSV."""
    geom = req.to_geometry()
    init = evolution.EvolutionState(
        P=Poly((parse_scalar(req.P0), parse_scalar(req.P1))),
        A3=Poly.const(parse_scalar(req.a3)),
        B0=Poly.const(parse_scalar(req.b0)),
        B1=Poly.const(parse_scalar(req.b1)),
        B2=Poly.const(parse_scalar(req.b2)),
        C0=Poly.const(parse_scalar(req.c0)),
        C1=Poly.const(parse_scalar(req.c1)),
        C2=Poly.const(parse_scalar(req.c2)),
    )
    result = evolution.integrate_numeric(init, None, geom, req.t_end, req.step, req.tol)
    report = models.EvolveNumericOut(
        command="evolve-numeric",
        input=_input_echo(req),
        steps=len(result.rows) - 1,
        t_end=req.t_end,
        final=result.final(),
        max_constraint_drift=result.max_drift,
        halted=result.halted,
        diagnostic=result.diagnostic,
    )
    return report, result


def do_verify_oracle(req: models.VerifyIn) -> models.VerifyOut:
    rep = oracle.verify_flat_system(req.samples, req.seed)
    return models.VerifyOut(command="verify-oracle", **rep)


def do_verify_su3(req: models.VerifyIn) -> models.VerifyOut:
    rep = oracle.verify_flat_su3(req.samples, req.seed)
    return models.VerifyOut(command="verify-su3", **rep)
