"""HTTP service exposing the verification engine.

The app is a thin wrapper: requests name a catalog entry (or carry an
expression), the core modules do the work, and responses are plain JSON
shapes mirrored by the pydantic models below.
"""

from __future__ import annotations

from fractions import Fraction

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .catalog import (
    CatalogEntry,
    entry_records,
    instantiate_params,
    load_catalog,
    verify_entry,
    _bind,
    _bind_field,
)
from .equivtrans import (
    EquivalenceTransform,
    pushforward_domain,
    pushforward_field,
    transform_F,
)
from .errors import LieverifyError, NonInvertible, ParseError
from .determine import verify_pair
from .expr import free_symbols
from .liealg import bracket_strings, match_algebra, structure_constants
from .parser import parse_expr, print_expr
from .simplify import normalize


class EntrySummary(BaseModel):
    id: str
    algebra: str
    generators: list[str]
    F: str
    omega: str | None = None
    v: str | None = None
    params: list[str] = []
    expected: str
    note: str | None = None


class ParseRequest(BaseModel):
    expression: str


class ParseResponse(BaseModel):
    canonical: str
    free_symbols: list[str]


class VerifyRequest(BaseModel):
    entry_id: str | None = None
    seed: int = 42
    points: int = Field(default=32, ge=8)


class VerifyResponse(BaseModel):
    status: str
    records: list[dict]


class CommutatorsRequest(BaseModel):
    entry_id: str
    seed: int = 42


class BindingBrackets(BaseModel):
    binding: dict[str, str]
    brackets: list[str] | None = None
    matched: str | None = None
    parameter: str | None = None
    error: str | None = None


class CommutatorsResponse(BaseModel):
    id: str
    bindings: list[BindingBrackets]


class TransformRequest(BaseModel):
    entry_id: str
    gamma: str = "1"
    gamma1: str = "0"
    gamma2: str = "0"
    epsilon: int = 1
    rho: str = "1"
    theta: str = "0"
    seed: int = 42
    points: int = Field(default=32, ge=8)


class TransformBindingResult(BaseModel):
    binding: dict[str, str]
    transformed_F: str
    generators: list[str]
    structure_constants_preserved: bool
    reverified: bool


class TransformResponse(BaseModel):
    id: str
    results: list[TransformBindingResult]


def _summary(e: CatalogEntry) -> EntrySummary:
    return EntrySummary(
        id=e.id,
        algebra=e.algebra,
        generators=list(e.generators),
        F=e.F,
        omega=e.omega,
        v=e.v,
        params=[p.describe() for p in e.params],
        expected=e.expected,
        note=e.note,
    )


def _fraction(name: str, raw: str) -> Fraction:
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise HTTPException(status_code=422, detail=f"bad rational for {name}: {raw!r}")


def create_app(catalog_path: str | None = None) -> FastAPI:
    from .cli import default_catalog_path

    entries = load_catalog(catalog_path or default_catalog_path())
    by_id = {e.id: e for e in entries}
    app = FastAPI(title="lieverify", version=__version__)

    def _entry(entry_id: str) -> CatalogEntry:
        e = by_id.get(entry_id)
        if e is None:
            raise HTTPException(status_code=404, detail=f"unknown entry {entry_id!r}")
        return e

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__, "entries": len(entries)}

    @app.get("/entries", response_model=list[EntrySummary])
    def list_entries() -> list[EntrySummary]:
        return [_summary(e) for e in entries]

    @app.post("/parse", response_model=ParseResponse)
    def parse(req: ParseRequest) -> ParseResponse:
        try:
            e = parse_expr(req.expression)
        except ParseError as err:
            raise HTTPException(status_code=422, detail=str(err))
        return ParseResponse(
            canonical=print_expr(normalize(e)),
            free_symbols=sorted(free_symbols(e)),
        )

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        if req.entry_id is not None:
            targets = [_entry(req.entry_id)]
        else:
            targets = entries
        records: list[dict] = []
        worst = "pass"
        order = ["pass", "known-discrepancy", "unexpected-pass", "unexpected-fail"]
        for e in targets:
            rep = verify_entry(e, seed=req.seed, points=req.points)
            records.extend(entry_records(rep))
            if order.index(rep.status) > order.index(worst):
                worst = rep.status
        return VerifyResponse(status=worst, records=records)

    @app.post("/commutators", response_model=CommutatorsResponse)
    def commutators(req: CommutatorsRequest) -> CommutatorsResponse:
        e = _entry(req.entry_id)
        try:
            bindings = instantiate_params(e, req.seed)
            fields = e.parsed_generators()
        except LieverifyError as err:
            raise HTTPException(status_code=422, detail=str(err))
        domain = e.domain()
        out = []
        for bi, binding in enumerate(bindings):
            bfields = tuple(_bind_field(f, binding) for f in fields)
            row = BindingBrackets(binding={k: str(v) for k, v in sorted(binding.items())})
            try:
                c = structure_constants(
                    bfields, seed=req.seed, key=f"{e.id}|b{bi}|sc", domain=domain
                )
                row.brackets = bracket_strings(c)
                m = match_algebra(c)
                row.matched = m.name if m else None
                if m and m.parameter:
                    row.parameter = f"{m.parameter[0]} = {m.parameter[1]}"
            except LieverifyError as err:
                row.error = str(err)
            out.append(row)
        return CommutatorsResponse(id=e.id, bindings=out)

    @app.post("/transform", response_model=TransformResponse)
    def transform(req: TransformRequest) -> TransformResponse:
        e = _entry(req.entry_id)
        try:
            T = EquivalenceTransform(
                gamma=_fraction("gamma", req.gamma),
                gamma1=_fraction("gamma1", req.gamma1),
                gamma2=_fraction("gamma2", req.gamma2),
                epsilon=req.epsilon,
                rho=parse_expr(req.rho),
                theta=parse_expr(req.theta),
            )
        except (ParseError, NonInvertible) as err:
            raise HTTPException(status_code=422, detail=str(err))

        try:
            bindings = instantiate_params(e, req.seed)
        except LieverifyError as err:
            raise HTTPException(status_code=422, detail=str(err))
        fields = e.parsed_generators()
        F = e.parsed_F()
        base_dom = e.domain()
        new_dom = pushforward_domain(T, base_dom)

        results = []
        for bi, binding in enumerate(bindings):
            bfields = [_bind_field(f, binding) for f in fields]
            bF = _bind(F, binding)
            Ft = transform_F(T, bF)
            pushed = [pushforward_field(T, f) for f in bfields]
            key = f"{e.id}|T|b{bi}"
            try:
                c_old = structure_constants(
                    tuple(bfields), seed=req.seed, key=key + "|sc0", domain=base_dom
                )
                c_new = structure_constants(
                    tuple(pushed), seed=req.seed, key=key + "|sc1", domain=new_dom
                )
            except LieverifyError as err:
                raise HTTPException(status_code=422, detail=str(err))
            verdicts = [
                verify_pair(g, Ft, seed=req.seed, key=f"{key}|g{gi}",
                            domain=new_dom, points=req.points)
                for gi, g in enumerate(pushed)
            ]
            results.append(
                TransformBindingResult(
                    binding={k: str(v) for k, v in sorted(binding.items())},
                    transformed_F=print_expr(Ft),
                    generators=[str(g) for g in pushed],
                    structure_constants_preserved=c_old == c_new,
                    reverified=all(v.ok for v in verdicts),
                )
            )
        return TransformResponse(id=e.id, results=results)

    return app
