"""HTTP service exposing the toric Frobenius toolkit.

Error payloads carry an `exit_code` hint so thin clients can map failures to
process exit codes: 1 validation failure, 2 parse/name error, 3 budget.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from . import __version__
from .catalog import catalog as catalog_fan
from .catalog import catalog_names
from .classes import class_group
from .errors import (
    BudgetExceeded,
    ParseError,
    ToricFrobError,
    UnknownName,
    ValidationError,
)
from .fan import validate
from .fanjson import build_fan
from .frobenius import fsupp, signatures, trace_kernel_decomposition, twisted_decomposition
from .mori import extremal_contractions, mori_cone
from .plotting import plot_ns
from .polyhedra import extreme_rays
from .report import rat, run_chain, run_report
from .schemas import DecomposeRequest, FanRequest, ReportRequest

app = FastAPI(title="toricfrob", version=__version__)


def _resolve(req: FanRequest):
    if req.catalog is not None:
        fan = catalog_fan(req.catalog)
        return fan, []
    if req.fan is None:
        raise ParseError("request must provide either 'fan' or 'catalog'")
    return build_fan(req.fan.dim, req.fan.rays, req.fan.max_cones, req.fan.name)


def _error(status: int, exc: Exception, exit_code: int, diagnostics=None):
    body = {
        "error": type(exc).__name__,
        "message": str(exc),
        "exit_code": exit_code,
    }
    if diagnostics is not None:
        body["diagnostics"] = diagnostics
    return JSONResponse(status_code=status, content=body)


@app.exception_handler(ParseError)
async def _parse_error(_, exc):
    return _error(400, exc, 2)


@app.exception_handler(UnknownName)
async def _unknown_name(_, exc):
    return _error(404, exc, 2)


@app.exception_handler(ValidationError)
async def _validation_error(_, exc):
    return _error(422, exc, 1, diagnostics=exc.diagnostics)


@app.exception_handler(BudgetExceeded)
async def _budget(_, exc):
    return _error(413, exc, 3)


@app.exception_handler(ToricFrobError)
async def _domain_error(_, exc):
    return _error(409, exc, 1)


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.get("/catalog")
def catalog_listing():
    return {"names": catalog_names()}


@app.get("/catalog/{name}")
def catalog_entry(name: str):
    fan = catalog_fan(name)
    return {
        "dim": fan.dim,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c) for c in fan.max_cones],
        "name": fan.name,
    }


@app.post("/validate")
def validate_endpoint(req: FanRequest):
    if req.catalog is not None:
        fan, notes = catalog_fan(req.catalog), []
    elif req.fan is not None:
        # run full diagnostics even for invalid fans instead of raising
        try:
            fan, notes = build_fan(req.fan.dim, req.fan.rays, req.fan.max_cones, req.fan.name)
        except ValidationError as exc:
            return {
                "valid": False,
                "errors": exc.diagnostics or [str(exc)],
                "warnings": [],
            }
    else:
        raise ParseError("request must provide either 'fan' or 'catalog'")
    diag = validate(fan)
    return {
        "valid": diag.valid,
        "simplicial": diag.simplicial,
        "complete": diag.complete,
        "smooth": diag.smooth,
        "errors": list(diag.errors),
        "warnings": notes,
    }


@app.post("/report")
def report_endpoint(req: ReportRequest):
    fan, notes = _resolve(req)
    report = run_report(fan, p=req.p, e_list=req.e_list, checks=req.checks)
    if notes:
        report["warnings"] = notes
    return report


@app.post("/fsupp")
def fsupp_endpoint(req: FanRequest):
    fan, _ = _resolve(req)
    cg = class_group(fan)
    return {
        "entries": [
            {
                "class": list(e.cls),
                "alpha": rat(e.alpha),
                "big": e.big,
                "nef": e.nef,
                "ample": e.ample,
            }
            for e in fsupp(fan, cg)
        ]
    }


@app.post("/signatures")
def signatures_endpoint(req: FanRequest):
    fan, _ = _resolve(req)
    sig = signatures(fan)
    return {
        "a": rat(sig.ample_signature),
        "n": rat(sig.nef_signature),
        "total_big_mass": rat(sig.total_big_mass),
    }


@app.post("/decompose")
def decompose_endpoint(req: DecomposeRequest):
    fan, _ = _resolve(req)
    cg = class_group(fan)
    if req.divisor is not None:
        if len(req.divisor) != fan.r:
            raise ParseError("divisor length must equal the ray count")
        dec = twisted_decomposition(fan, cg, cg.project(req.divisor), req.p, req.e)
        total_kind = "pushforward"
    else:
        dec = trace_kernel_decomposition(fan, cg, req.p, req.e)
        total_kind = "trace_kernel"
    return {
        "p": dec.p,
        "e": dec.e,
        "q": dec.p**dec.e,
        "kind": total_kind,
        "total": dec.total,
        "e_below_torsion_threshold": dec.e_below_torsion_threshold,
        "entries": [
            {
                "class": {"free": list(c.free), "torsion": list(c.torsion)},
                "multiplicity": m,
            }
            for c, m in dec.entries
        ],
    }


@app.post("/mori")
def mori_endpoint(req: FanRequest):
    fan, _ = _resolve(req)
    return {
        "mori_rays": [list(g) for g in sorted(extreme_rays(mori_cone(fan)))],
        "contractions": [
            {
                "relation": list(i.relation.coefficients),
                "kind": i.kind,
                "fiber_dim": i.fiber_dim,
                "exc_codim": i.exc_codim,
                "inert": i.inert,
                "smooth_blowup": i.smooth_blowup,
                "degree": i.degree,
                "length": i.length,
                "classification_conflict": i.classification_conflict,
            }
            for i in extremal_contractions(fan)
        ],
    }


@app.post("/chain")
def chain_endpoint(req: FanRequest):
    fan, _ = _resolve(req)
    return run_chain(fan)


@app.post("/plot")
def plot_endpoint(req: FanRequest):
    fan, _ = _resolve(req)
    return {"svg": plot_ns(fan)}
