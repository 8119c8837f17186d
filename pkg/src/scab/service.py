"""HTTP service exposing the workbench operations.

The FastAPI app wraps the same operation layer the CLI uses: every endpoint
body is a pydantic model, and the handlers below delegate to the plain
``op_*`` functions so in-process callers (the CLI, tests) get identical
behavior without a running server.
"""

from __future__ import annotations

import os
from typing import Any, Optional, Union

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import catalog
from .errors import ScabError
from .exchange import (ExtendedExchangeMatrix, enumerate_exchange_graph,
                       mutate_extended)
from .laminations import shear_coords
from .realization import realize

MAX_SEEDS_ENV = "SCAB_MAX_SEEDS"


def default_max_seeds() -> int:
    return int(os.environ.get(MAX_SEEDS_ENV, "100000"))


# ---------------------------------------------------------------------------
# models


class MutateRequest(BaseModel):
    matrix: list[list[int]]
    seq: list[int]
    n: Optional[int] = None


class MutateResponse(BaseModel):
    matrix: list[list[int]]


class EnumerateRequest(BaseModel):
    example: str
    max_seeds: Optional[int] = None


class SeedModel(BaseModel):
    n: int
    labels: list[str]
    ext: list[list[int]]
    cluster: list[str]


class EnumerateResponse(BaseModel):
    seeds: int
    edges: int
    variables: list[str]
    truncated: bool
    graph: dict[str, Any]


class ShearRequest(BaseModel):
    example: str
    lamination: int = 0
    path: list[Union[int, str]] = Field(default_factory=list)


class ShearResponse(BaseModel):
    shear: list[int]


class RealizeRequest(BaseModel):
    example: str
    assignment: dict[str, list[float]]
    queries: list[dict[str, list[int]]] = Field(default_factory=list)


class RealizeResponse(BaseModel):
    values: list[list[float]]
    residuals: dict[str, float]


class VerifyRequest(BaseModel):
    suite: str = "paper"
    example: Optional[str] = None


class VerifyResponse(BaseModel):
    ok: bool
    checks: int
    failures: int
    lines: list[str]


class ExportRequest(BaseModel):
    example: str
    format: str = "dot"
    max_seeds: Optional[int] = None


class ExportResponse(BaseModel):
    content: str


# ---------------------------------------------------------------------------
# operation layer


def op_catalog_list() -> list[str]:
    return catalog.list_examples()


def op_catalog_show(name: str) -> dict:
    return catalog.get_example(name).to_json()


def op_mutate(req: MutateRequest) -> MutateResponse:
    n = req.n if req.n is not None else len(req.matrix[0])
    mat = ExtendedExchangeMatrix(req.matrix, n)
    for k in req.seq:
        mat = mutate_extended(mat, k)
    return MutateResponse(matrix=[list(row) for row in mat.rows])


def _parse_path(path) -> list:
    moves = []
    for item in path:
        if isinstance(item, int):
            moves.append(item)
        elif isinstance(item, str) and item.startswith("tags:"):
            moves.append(("tags", item.split(":", 1)[1]))
        elif isinstance(item, str) and item.lstrip("-").isdigit():
            moves.append(int(item))
        else:
            raise ScabError(f"bad path element {item!r}; use an arc position "
                            "or tags:<puncture>")
    return moves


def op_enumerate(req: EnumerateRequest) -> EnumerateResponse:
    bundle = catalog.get_example(req.example)
    bound = req.max_seeds if req.max_seeds is not None else default_max_seeds()
    graph = enumerate_exchange_graph(bundle.seed(), bound)
    edges = sorted({tuple(sorted((u, graph.adjacency[(u, k)][0])))
                    for (u, k) in graph.adjacency})
    return EnumerateResponse(
        seeds=graph.n_seeds,
        edges=len(edges),
        variables=graph.sorted_variable_strings(),
        truncated=graph.truncated,
        graph={
            "vertices": [s.to_json() for s in graph.seeds],
            "edges": [[u, k, v] for (u, k), (v, _) in
                      sorted(graph.adjacency.items())],
        },
    )


def op_shear(req: ShearRequest) -> ShearResponse:
    bundle = catalog.get_example(req.example)
    if bundle.multilamination is None:
        raise ScabError(f"example {req.example} carries no laminations")
    lams = bundle.multilamination.laminations
    if not 0 <= req.lamination < len(lams):
        raise ScabError(f"lamination index out of range (0..{len(lams) - 1})")
    lam = lams[req.lamination]
    moves = _parse_path(req.path)
    current = lam.reference
    from .surface import change_tags as _ct, flip as _fl
    for move in moves:
        if isinstance(move, tuple):
            current = _ct(current, move[1])
        else:
            current = _fl(current, move).new_triangulation
    return ShearResponse(shear=list(shear_coords(lam, current, moves)))


def op_realize(req: RealizeRequest) -> RealizeResponse:
    bundle = catalog.get_example(req.example)
    seed = bundle.seed()
    assignment = {"x": req.assignment.get("x", []),
                  "q": req.assignment.get("q", [])}
    r = realize(seed, assignment)
    values = []
    residuals: dict[str, float] = {}
    for idx, query in enumerate(req.queries):
        path = query.get("path", [])
        vals = r.values_at(path)
        values.append(vals)
        ext = seed.ext
        for k in path:
            ext = mutate_extended(ext, k)
        if ext == seed.ext:
            residuals[f"cycle_{idx}"] = max(
                abs(v - x) / x for v, x in zip(vals, r.xvals))
    return RealizeResponse(values=values, residuals=residuals)


def op_verify(req: VerifyRequest) -> VerifyResponse:
    if req.suite != "paper":
        raise ScabError(f"unknown suite {req.suite!r}; only 'paper' exists")
    report = catalog.run_regressions(req.example or "all")
    failures = sum(1 for r in report.results if not r.passed)
    return VerifyResponse(ok=report.ok, checks=len(report.results),
                          failures=failures, lines=report.lines())


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def op_export(req: ExportRequest) -> ExportResponse:
    if req.format != "dot":
        raise ScabError(f"unsupported export format {req.format!r}")
    bundle = catalog.get_example(req.example)
    bound = req.max_seeds if req.max_seeds is not None else default_max_seeds()
    graph = enumerate_exchange_graph(bundle.seed(), bound)
    lines = ["graph exchange {"]
    for i, seed in enumerate(graph.seeds):
        label = ", ".join(sorted(str(x) for x in seed.cluster))
        if len(label) > 60:
            label = label[:57] + "..."
        lines.append(f'  v{i} [label="{_dot_escape(label)}"];')
    seen = set()
    for (u, k), (v, _) in sorted(graph.adjacency.items()):
        edge = tuple(sorted((u, v)))
        if edge not in seen:
            seen.add(edge)
            lines.append(f"  v{edge[0]} -- v{edge[1]};")
    lines.append("}")
    return ExportResponse(content="\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# FastAPI wiring


app = FastAPI(title="scab", description="cluster algebras from surfaces")


def _wrap(func, *args):
    try:
        return func(*args)
    except ScabError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/catalog")
def catalog_list() -> dict:
    return {"examples": op_catalog_list()}


@app.get("/catalog/{name}")
def catalog_show(name: str) -> dict:
    return _wrap(op_catalog_show, name)


@app.post("/mutate", response_model=MutateResponse)
def mutate(req: MutateRequest) -> MutateResponse:
    return _wrap(op_mutate, req)


@app.post("/enumerate", response_model=EnumerateResponse)
def enumerate_(req: EnumerateRequest) -> EnumerateResponse:
    return _wrap(op_enumerate, req)


@app.post("/shear", response_model=ShearResponse)
def shear(req: ShearRequest) -> ShearResponse:
    return _wrap(op_shear, req)


@app.post("/realize", response_model=RealizeResponse)
def realize_(req: RealizeRequest) -> RealizeResponse:
    return _wrap(op_realize, req)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    return _wrap(op_verify, req)


@app.post("/export", response_model=ExportResponse)
def export(req: ExportRequest) -> ExportResponse:
    return _wrap(op_export, req)
