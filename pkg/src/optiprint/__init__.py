"""optiprint: optimal pretty printing with pluggable cost objectives.

Build documents with the combinators in optiprint.doc, pick a cost factory,
and print with resolver.print_doc; the printer finds a minimum-cost layout
among all formatting choices within the computation width limit.
"""

from .doc import (
    Doc,
    acat,
    align,
    alt,
    concat,
    fail,
    fill_sep,
    flatten,
    group,
    hard_nl,
    nest,
    newline,
    nl,
    reset,
    text,
    vcat,
    with_cost,
)
from .costs import (
    CostFactory,
    FACTORIES,
    InvalidMaxLexCost,
    LinearCost,
    MaxOverflowCost,
    QuadraticCost,
    check_factory_validity,
    layout_cost,
)
from .frontends import StyleConfig, json_to_doc, parse_doc_ir, sexp_to_doc
from .resolver import PrintResult, ResolverConfig, print_doc
from .semantics import NoLayoutError, brute_force_print, evaluate, render, widen

__all__ = [
    "Doc",
    "text",
    "nl",
    "newline",
    "hard_nl",
    "fail",
    "concat",
    "nest",
    "align",
    "reset",
    "alt",
    "with_cost",
    "flatten",
    "group",
    "vcat",
    "acat",
    "fill_sep",
    "CostFactory",
    "LinearCost",
    "QuadraticCost",
    "MaxOverflowCost",
    "InvalidMaxLexCost",
    "FACTORIES",
    "layout_cost",
    "check_factory_validity",
    "StyleConfig",
    "json_to_doc",
    "sexp_to_doc",
    "parse_doc_ir",
    "ResolverConfig",
    "PrintResult",
    "print_doc",
    "NoLayoutError",
    "render",
    "widen",
    "evaluate",
    "brute_force_print",
]
