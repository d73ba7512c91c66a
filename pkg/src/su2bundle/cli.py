"""Command-line client for the geometry service.

Thin by design: flags and an optional JSON config are merged into the same
request models the HTTP service uses, then dispatched either in process
(default) or against a running server (--server URL). Reports are printed as
JSON with sorted keys, so identical inputs give byte-identical output.

Exit codes: 0 success, 2 constraint or validation failure (the report names
the violated equation), 1 internal error or malformed config.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from pydantic import ValidationError

from .errors import ConstraintViolation
from .service import handlers, models

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_CONSTRAINT = 2

SCALAR_FLAGS = {
    "classify": ["p", "a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3",
                 "c0", "c1", "c2", "c3", "K", "s", "s2"],
    "metric": ["p", "a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3",
               "c0", "c1", "c2", "c3", "K", "s", "s2"],
    "solve-type1": ["X", "Y", "A", "B", "K", "s", "s2"],
    "solve-type1-nh": ["b0", "b1", "b2", "K", "s", "s2"],
    "solve-se": ["b2", "s", "s2", "K"],
    "solve-type2": ["a0", "a2", "a3", "p", "b0", "s", "s2"],
    "evolve-flat": ["p", "a4", "b0", "c0", "b4", "c4", "b5", "c5", "s", "s2", "K"],
    "evolve-numeric": ["a3", "b0", "b1", "b2", "c0", "c1", "c2",
                       "P0", "P1", "K", "s", "s2"],
    "verify-oracle": [],
    "verify-su3": [],
}

COMMAND_SPECS = {
    "classify": (models.StructureIn, handlers.do_classify, "/classify"),
    "metric": (models.StructureIn, handlers.do_metric, "/metric"),
    "solve-type1": (models.SolveType1In, handlers.do_solve_type1, "/solve/type1"),
    "solve-type1-nh": (models.SolveType1NHIn, handlers.do_solve_type1_nh, "/solve/type1-nh"),
    "solve-se": (models.SolveSEIn, handlers.do_solve_se, "/solve/se"),
    "solve-type2": (models.SolveType2In, handlers.do_solve_type2, "/solve/type2"),
    "evolve-flat": (models.EvolveFlatIn, None, "/evolve/flat"),
    "evolve-numeric": (models.EvolveNumericIn, None, "/evolve/numeric"),
    "verify-oracle": (models.VerifyIn, handlers.do_verify_oracle, "/verify/oracle"),
    "verify-su3": (models.VerifyIn, handlers.do_verify_su3, "/verify/su3"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="su2bundle",
        description="Natural SU(2)-structures on tangent sphere bundles: "
                    "classify, solve, evolve, verify.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", help="JSON config file; flags override its fields")
        sp.add_argument("--out", help="write the JSON report to this path")
        sp.add_argument("--server", help="dispatch against a running service URL")
        sp.add_argument("--tol", type=float, help="comparison tolerance override")

    for command, flags in SCALAR_FLAGS.items():
        sp = sub.add_parser(command)
        add_common(sp)
        for flag in flags:
            sp.add_argument(f"--{flag}", type=str)
        if command in ("solve-se",):
            sp.add_argument("--sign-q", dest="sign_q", type=int, choices=(1, -1))
        if command in ("solve-type2",):
            sp.add_argument("--sign-b1", dest="sign_b1", type=int, choices=(1, -1))
        if command in ("evolve-flat", "evolve-numeric"):
            sp.add_argument("--t-end", dest="t_end", type=float)
            sp.add_argument("--csv", help="write the trajectory as CSV to this path")
        if command == "evolve-flat":
            sp.add_argument("--samples", type=int)
        if command == "evolve-numeric":
            sp.add_argument("--step", type=float)
        if command in ("verify-oracle", "verify-su3"):
            sp.add_argument("--samples", type=int)
            sp.add_argument("--seed", type=int)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    return parser


def _load_config(path: Optional[str]) -> dict:
    if not path:
        return {}
    with open(path) as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise ValueError("config must be a JSON object")
    return data


def _gather_payload(args: argparse.Namespace) -> dict:
    payload = _load_config(args.config)
    payload.pop("command", None)
    skip = {"command", "config", "out", "server", "csv"}
    for key, value in vars(args).items():
        if key in skip or value is None:
            continue
        payload[key] = value
    return payload


def _emit(report_dict: dict, out_path: Optional[str]) -> None:
    text = json.dumps(report_dict, sort_keys=True, indent=2)
    print(text)
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(text + "\n")


def _dispatch_remote(server: str, path: str, payload: dict) -> tuple:
    import httpx

    response = httpx.post(server.rstrip("/") + path, json=payload, timeout=300.0)
    if response.status_code == 422:
        body = response.json()
        error = body.get("error") or body.get("detail")
        return None, error
    response.raise_for_status()
    return response.json(), None


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    command = args.command

    if command == "serve":
        import uvicorn

        from .service.app import app

        uvicorn.run(app, host=args.host, port=args.port)
        return EXIT_OK

    model_cls, handler, http_path = COMMAND_SPECS[command]
    try:
        payload = _gather_payload(args)
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: malformed config: {exc}", file=sys.stderr)
        return EXIT_INTERNAL

    csv_path = getattr(args, "csv", None)
    try:
        if args.server:
            report_dict, error = _dispatch_remote(args.server, http_path, payload)
            if error is not None:
                _emit({"error": error}, args.out)
                return EXIT_CONSTRAINT
            if csv_path:
                print("note: --csv is only available for in-process runs", file=sys.stderr)
        else:
            request = model_cls(**payload)
            if command == "evolve-flat":
                report, trajectory = handlers.do_evolve_flat(request)
            elif command == "evolve-numeric":
                report, trajectory = handlers.do_evolve_numeric(request)
            else:
                report = handler(request)
                trajectory = None
            if csv_path and trajectory is not None:
                from .evolution import write_trajectory_csv

                write_trajectory_csv(trajectory, csv_path)
            report_dict = report.model_dump(exclude_none=True)
        _emit(report_dict, args.out)
        return EXIT_OK
    except ConstraintViolation as exc:
        _emit({"error": {"label": exc.label, "message": exc.message}}, args.out)
        return EXIT_CONSTRAINT
    except ValidationError as exc:
        _emit({"error": {"label": "payload validation", "message": str(exc)}}, args.out)
        return EXIT_CONSTRAINT
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports, not raises
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
