"""Natural SU(2)-structures on radius-s tangent sphere bundles of oriented
constant-curvature 3-manifolds: exact structure-equation calculus, class
detection (hypo, nearly-hypo, double-hypo, contact, Sasaki-Einstein), the
induced metrics, evolution to integrable product structures, and an
independent numeric verification oracle on the flat model."""

from .classify import ClassificationFlags, classify, curvature_guards
from .errors import ConstraintViolation, SpanError
from .exterior import FrameVector, KForm, contract, equals, linear_combine, wedge
from .families import (
    TypeIIParams,
    TypeIParams,
    sasaki_einstein_family,
    type1_from_parameters,
    type1_nearly_hypo,
    type2_double_hypo,
    verify_named_systems,
)
from .frames import (
    GeometryParams,
    InvariantForm,
    d_extended,
    d_invariant,
    expand_invariant,
    generator,
    project_invariant,
)
from .evolution import (
    EvolutionState,
    SU3Structure,
    build_su3,
    check_integrable,
    evolution_residuals,
    evolution_rhs,
    flat_solution,
    integrate_numeric,
)
from .oracle import ChartPoint, eval_form, numeric_d, verify_flat_su3, verify_flat_system
from .poly import Poly
from .su2core import (
    MetricReport,
    NaturalStructure,
    PhiTriple,
    SU2Check,
    check_su2,
    metric_closed_form,
    metric_contraction,
    metric_contraction_symmetric,
    phi_matrices,
    preservation_flags,
)

__version__ = "0.1.0"

__all__ = [
    "ChartPoint",
    "ClassificationFlags",
    "ConstraintViolation",
    "EvolutionState",
    "FrameVector",
    "GeometryParams",
    "InvariantForm",
    "KForm",
    "MetricReport",
    "NaturalStructure",
    "PhiTriple",
    "Poly",
    "SU2Check",
    "SU3Structure",
    "SpanError",
    "TypeIIParams",
    "TypeIParams",
    "build_su3",
    "check_integrable",
    "check_su2",
    "classify",
    "contract",
    "curvature_guards",
    "d_extended",
    "d_invariant",
    "equals",
    "eval_form",
    "evolution_residuals",
    "evolution_rhs",
    "expand_invariant",
    "flat_solution",
    "generator",
    "integrate_numeric",
    "linear_combine",
    "metric_closed_form",
    "metric_contraction",
    "metric_contraction_symmetric",
    "numeric_d",
    "phi_matrices",
    "preservation_flags",
    "project_invariant",
    "sasaki_einstein_family",
    "type1_from_parameters",
    "type1_nearly_hypo",
    "type2_double_hypo",
    "verify_flat_su3",
    "verify_flat_system",
    "verify_named_systems",
    "wedge",
]
