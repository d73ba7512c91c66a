"""FastAPI surface: one POST endpoint per command."""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import ConstraintViolation
from . import handlers, models

app = FastAPI(
    title="su2bundle",
    description="Natural SU(2)-structures on tangent sphere bundles: "
                "classification, metrics, solution families, evolution, "
                "and numeric verification.",
)


@app.exception_handler(ConstraintViolation)
async def constraint_violation_handler(request: Request, exc: ConstraintViolation):
    return JSONResponse(
        status_code=422,
        content={"error": models.ErrorOut(label=exc.label, message=exc.message).model_dump()},
    )


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/classify", response_model=models.ClassifyOut)
def classify_endpoint(req: models.StructureIn):
    return handlers.do_classify(req)


@app.post("/metric", response_model=models.MetricReportOut)
def metric_endpoint(req: models.StructureIn):
    return handlers.do_metric(req)


@app.post("/solve/type1", response_model=models.SolveOut)
def solve_type1_endpoint(req: models.SolveType1In):
    return handlers.do_solve_type1(req)


@app.post("/solve/type1-nh", response_model=models.SolveOut)
def solve_type1_nh_endpoint(req: models.SolveType1NHIn):
    return handlers.do_solve_type1_nh(req)


@app.post("/solve/se", response_model=models.SolveOut)
def solve_se_endpoint(req: models.SolveSEIn):
    return handlers.do_solve_se(req)


@app.post("/solve/type2", response_model=models.SolveOut)
def solve_type2_endpoint(req: models.SolveType2In):
    return handlers.do_solve_type2(req)


@app.post("/evolve/flat", response_model=models.EvolveFlatOut)
def evolve_flat_endpoint(req: models.EvolveFlatIn):
    report, _ = handlers.do_evolve_flat(req)
    return report


@app.post("/evolve/numeric", response_model=models.EvolveNumericOut)
def evolve_numeric_endpoint(req: models.EvolveNumericIn):
    report, _ = handlers.do_evolve_numeric(req)
    return report


@app.post("/verify/oracle", response_model=models.VerifyOut)
def verify_oracle_endpoint(req: models.VerifyIn):
    return handlers.do_verify_oracle(req)


@app.post("/verify/su3", response_model=models.VerifyOut)
def verify_su3_endpoint(req: models.VerifyIn):
    return handlers.do_verify_su3(req)
