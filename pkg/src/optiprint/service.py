"""HTTP service wrapping the printer: format text, check cost factories."""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .costs import CHECKABLE_FACTORIES, FACTORIES, check_factory_validity
from .frontends import ParseError, StyleConfig, json_to_doc, parse_doc_ir, sexp_to_doc
from .resolver import ResolverConfig, print_doc
from .semantics import NoLayoutError

app = FastAPI(title="optiprint", description="Optimal pretty-printing service")


class FormatRequest(BaseModel):
    content: str
    syntax: Literal["json", "sexp", "docir"] = "json"
    page_width: int = Field(default=80, ge=0)
    computation_width: int = Field(default=100, ge=0)
    factory: Literal["linear", "quadratic", "max"] = "quadratic"
    indent: int = Field(default=2, ge=0)


class FormatResponse(BaseModel):
    text: str
    lines: int
    tainted: bool


class CheckFactoryRequest(BaseModel):
    name: str
    trials: int = Field(default=10000, gt=0)
    seed: int = 0
    page_width: int = Field(default=6, ge=0)


class CheckFactoryResponse(BaseModel):
    ok: bool
    contract: Optional[str] = None
    witnesses: Optional[str] = None


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/format", response_model=FormatResponse)
def format_document(req: FormatRequest):
    style = StyleConfig(indent_width=req.indent)
    try:
        if req.syntax == "json":
            doc = json_to_doc(req.content, style)
        elif req.syntax == "sexp":
            doc = sexp_to_doc(req.content, style)
        else:
            doc = parse_doc_ir(req.content)
    except (ParseError, ValueError) as e:
        raise HTTPException(status_code=422, detail=str(e))
    cfg = ResolverConfig(
        factory=FACTORIES[req.factory](req.page_width),
        width_limit=req.computation_width,
    )
    try:
        result = print_doc(doc, cfg)
    except NoLayoutError as e:
        raise HTTPException(status_code=422, detail=str(e))
    return FormatResponse(
        text="\n".join(result.layout), lines=len(result.layout), tainted=result.tainted
    )


@app.post("/check-factory", response_model=CheckFactoryResponse)
def check_factory(req: CheckFactoryRequest):
    cls = CHECKABLE_FACTORIES.get(req.name)
    if cls is None:
        raise HTTPException(status_code=404, detail="unknown factory %r" % req.name)
    report = check_factory_validity(cls(req.page_width), req.trials, req.seed)
    return CheckFactoryResponse(
        ok=report.ok,
        contract=report.contract,
        witnesses=repr(report.witnesses) if report.witnesses is not None else None,
    )
