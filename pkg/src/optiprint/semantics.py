"""Reference semantics: executable ground truth for the optimized printer.

Everything here favors clarity over speed; the brute-force printer is
intentionally exponential and meant for test-scale documents only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import doc as D


class NoLayoutError(Exception):
    """The document evaluates to no layout (all branches fail)."""


def render(d, c=0, i=0, flatten_mode=False):
    """Render a choiceless document in context (c, i, f).

    Returns a layout (non-empty list of newline-free lines) or None when
    rendering is impossible (fail, or a flattened hard newline).
    """
    k = d.kind
    if k == D.TEXT:
        return [d.text]
    if k == D.NEWLINE:
        if flatten_mode:
            if d.flatten_alt is None:
                return None
            return [d.flatten_alt]
        return ["", " " * i]
    if k == D.FAIL:
        return None
    if k == D.CONCAT:
        la = render(d.left, c, i, flatten_mode)
        if la is None:
            return None
        if len(la) == 1:
            lb = render(d.right, c + len(la[0]), i, flatten_mode)
        else:
            lb = render(d.right, len(la[-1]), i, flatten_mode)
        if lb is None:
            return None
        return la[:-1] + [la[-1] + lb[0]] + lb[1:]
    if k == D.NEST:
        return render(d.inner, c, i + d.amount, flatten_mode)
    if k == D.ALIGN:
        return render(d.inner, c, c, flatten_mode)
    if k == D.RESET:
        return render(d.inner, c, 0, flatten_mode)
    if k == D.WITH_COST:
        return render(d.inner, c, i, flatten_mode)
    raise ValueError("render requires a choiceless document, got alt node")


def structural_key(d):
    """Structure-only key for set semantics (ignores node ids)."""
    memo = {}

    def go(n):
        key = memo.get(n.id)
        if key is not None:
            return key
        k = n.kind
        if k == D.TEXT:
            key = ("text", n.text)
        elif k == D.NEWLINE:
            key = ("newline", n.flatten_alt)
        elif k == D.FAIL:
            key = ("fail",)
        elif k == D.CONCAT:
            key = ("concat", go(n.left), go(n.right))
        elif k == D.ALT:
            key = ("alt", go(n.left), go(n.right))
        elif k == D.NEST:
            key = ("nest", n.amount, go(n.inner))
        elif k == D.ALIGN:
            key = ("align", go(n.inner))
        elif k == D.RESET:
            key = ("reset", go(n.inner))
        else:
            key = ("with_cost", n.extra_cost, go(n.inner))
        memo[n.id] = key
        return key

    return go(d)


def widen(d):
    """All choiceless documents a document denotes, in deterministic order.

    Duplicates collapse by structural equality; fail widens to nothing.
    The result may be exponential in the number of alt nodes.
    """

    def go(n):
        k = n.kind
        if k == D.ALT:
            return go(n.left) + go(n.right)
        if k == D.FAIL:
            return []
        if k == D.CONCAT:
            return [D.concat(a, b) for a in go(n.left) for b in go(n.right)]
        if k == D.NEST:
            return [D.nest(n.amount, x) for x in go(n.inner)]
        if k == D.ALIGN:
            return [D.align(x) for x in go(n.inner)]
        if k == D.RESET:
            return [D.reset(x) for x in go(n.inner)]
        if k == D.WITH_COST:
            return [D.with_cost(n.extra_cost, x) for x in go(n.inner)]
        return [n]

    out = []
    seen = set()
    for cd in go(d):
        key = structural_key(cd)
        if key not in seen:
            seen.add(key)
            out.append(cd)
    return out


def evaluate(d):
    """All layouts of a document at (0, 0, not flattening)."""
    out = []
    seen = set()
    for cd in widen(d):
        layout = render(cd, 0, 0, False)
        if layout is None:
            continue
        key = tuple(layout)
        if key not in seen:
            seen.add(key)
            out.append(layout)
    return out


@dataclass
class OracleMeasure:
    last: int
    cost: object
    doc: object
    maxx: int
    maxy: int


def measure_oracle(d, c, i, factory) -> Optional[OracleMeasure]:
    """Measure of a choiceless document per the structural rules.

    Returns None (impossible) for fail nodes.  Agrees with render plus
    layout_cost on last-line length, cost, and maximum column.
    """
    k = d.kind
    if k == D.TEXT:
        n = len(d.text)
        return OracleMeasure(c + n, factory.text_cost(c, n), d, c + n, i)
    if k == D.NEWLINE:
        return OracleMeasure(i, factory.nl_cost(i), d, max(c, i), i)
    if k == D.FAIL:
        return None
    if k == D.CONCAT:
        ma = measure_oracle(d.left, c, i, factory)
        if ma is None:
            return None
        mb = measure_oracle(d.right, ma.last, i, factory)
        if mb is None:
            return None
        return OracleMeasure(
            mb.last,
            factory.add(ma.cost, mb.cost),
            d,
            max(ma.maxx, mb.maxx),
            max(ma.maxy, mb.maxy),
        )
    if k == D.NEST:
        m = measure_oracle(d.inner, c, i + d.amount, factory)
        if m is None:
            return None
        return OracleMeasure(m.last, m.cost, d, m.maxx, m.maxy)
    if k == D.ALIGN:
        m = measure_oracle(d.inner, c, c, factory)
        if m is None:
            return None
        return OracleMeasure(m.last, m.cost, d, m.maxx, max(m.maxy, i))
    if k == D.RESET:
        m = measure_oracle(d.inner, c, 0, factory)
        if m is None:
            return None
        return OracleMeasure(m.last, m.cost, d, m.maxx, max(m.maxy, i))
    if k == D.WITH_COST:
        m = measure_oracle(d.inner, c, i, factory)
        if m is None:
            return None
        return OracleMeasure(m.last, factory.add(d.extra_cost, m.cost), d, m.maxx, m.maxy)
    raise ValueError("measure_oracle requires a choiceless document")


@dataclass
class BruteForceResult:
    layout: list
    cost: object
    within_limit: bool
    measure: OracleMeasure


def brute_force_print(d, factory, width_limit) -> BruteForceResult:
    """Enumerate all widenings, pick the minimum-cost one.

    Measures with maximum column and maximum indentation within the
    computation width limit are preferred; if none qualifies the global
    minimum is returned with within_limit=False.  Ties keep the first
    widening in enumeration order.
    """
    candidates = []
    for cd in widen(d):
        m = measure_oracle(cd, 0, 0, factory)
        if m is not None:
            candidates.append(m)
    if not candidates:
        raise NoLayoutError("document evaluates to no layout")

    def pick(ms):
        best = ms[0]
        for m in ms[1:]:
            if factory.le(m.cost, best.cost) and not factory.le(best.cost, m.cost):
                best = m
        return best

    qualifying = [m for m in candidates if m.maxx <= width_limit and m.maxy <= width_limit]
    if qualifying:
        best = pick(qualifying)
        within = True
    else:
        best = pick(candidates)
        within = False
    return BruteForceResult(render(best.doc, 0, 0, False), best.cost, within, best)
