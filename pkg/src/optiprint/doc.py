"""Document DAG: node kinds, construction combinators, and the flatten rewrite.

Documents are immutable identity-carrying nodes.  Sharing happens whenever the
caller reuses a Doc value; identity (the ``id`` field), not structure, keys
memoization downstream.
"""

from __future__ import annotations

import itertools
from typing import Optional

# Node kinds
TEXT = 0
NEWLINE = 1
FAIL = 2
CONCAT = 3
NEST = 4
ALIGN = 5
RESET = 6
ALT = 7
WITH_COST = 8

KIND_NAMES = {
    TEXT: "text",
    NEWLINE: "newline",
    FAIL: "fail",
    CONCAT: "concat",
    NEST: "nest",
    ALIGN: "align",
    RESET: "reset",
    ALT: "alt",
    WITH_COST: "with_cost",
}

# Composite nodes whose running weight reaches this limit become memoization
# points and report weight 0 to their parents.
MEMO_WEIGHT_LIMIT = 6

_next_id = itertools.count()


class Doc:
    __slots__ = (
        "id",
        "kind",
        "text",
        "flatten_alt",
        "left",
        "right",
        "inner",
        "amount",
        "extra_cost",
        "memo_weight",
        "is_memo_point",
        "flatten_cache",
    )

    def __init__(self, kind):
        self.id = next(_next_id)
        self.kind = kind
        self.text = None
        self.flatten_alt = None
        self.left = None
        self.right = None
        self.inner = None
        self.amount = 0
        self.extra_cost = None
        self.memo_weight = 0
        self.is_memo_point = False
        self.flatten_cache = None

    def __repr__(self):
        return "<Doc %d %s>" % (self.id, KIND_NAMES[self.kind])


def _children(d):
    k = d.kind
    if k == CONCAT or k == ALT:
        return (d.left, d.right)
    if k == NEST or k == ALIGN or k == RESET or k == WITH_COST:
        return (d.inner,)
    return ()


def _set_weight(d):
    kids = _children(d)
    if not kids:
        d.memo_weight = 1
        return
    w = 1 + max(k.memo_weight for k in kids)
    if w >= MEMO_WEIGHT_LIMIT:
        d.is_memo_point = True
        d.memo_weight = 0
    else:
        d.memo_weight = w


def _check_no_newline(s):
    if "\n" in s or "\r" in s:
        raise ValueError("text content must not contain newline characters: %r" % s)


# ---------------------------------------------------------------------------
# Leaf constructors
# ---------------------------------------------------------------------------

def text(s: str) -> Doc:
    """A piece of literal text; must be newline-free."""
    _check_no_newline(s)
    d = Doc(TEXT)
    d.text = s
    d.memo_weight = 1
    return d


def newline(alt_text: Optional[str]) -> Doc:
    """A newline with an optional inline alternative used when flattening.

    ``newline(None)`` is a hard newline: flattening it fails.
    """
    if alt_text is not None:
        _check_no_newline(alt_text)
    d = Doc(NEWLINE)
    d.flatten_alt = alt_text
    d.memo_weight = 1
    return d


def nl() -> Doc:
    """A soft newline that flattens to a single space."""
    return newline(" ")


def hard_nl() -> Doc:
    """A newline with no inline alternative."""
    return newline(None)


def fail() -> Doc:
    """A document with no layouts; identity for alt()."""
    d = Doc(FAIL)
    d.memo_weight = 1
    return d


# ---------------------------------------------------------------------------
# Composite constructors
# ---------------------------------------------------------------------------

def concat(a: Doc, b: Doc) -> Doc:
    d = Doc(CONCAT)
    d.left = a
    d.right = b
    _set_weight(d)
    return d


def nest(n: int, inner: Doc) -> Doc:
    """Increase the indentation level by n for newlines inside."""
    if n < 0:
        raise ValueError("nest amount must be a natural number")
    d = Doc(NEST)
    d.amount = n
    d.inner = inner
    _set_weight(d)
    return d


def align(inner: Doc) -> Doc:
    """Set the indentation level to the current column."""
    d = Doc(ALIGN)
    d.inner = inner
    _set_weight(d)
    return d


def reset(inner: Doc) -> Doc:
    """Set the indentation level to 0."""
    d = Doc(RESET)
    d.inner = inner
    _set_weight(d)
    return d


def alt(a: Doc, b: Doc) -> Doc:
    """Choice between two documents; the printer picks the cheaper layout."""
    d = Doc(ALT)
    d.left = a
    d.right = b
    _set_weight(d)
    return d


def with_cost(extra, inner: Doc) -> Doc:
    """Add a fixed factory cost to every layout of inner."""
    d = Doc(WITH_COST)
    d.extra_cost = extra
    d.inner = inner
    _set_weight(d)
    return d


# ---------------------------------------------------------------------------
# Flatten
# ---------------------------------------------------------------------------

def flatten(d: Doc) -> Doc:
    """Replace every reachable newline by its inline alternative.

    Memoized per node; returns the input node itself when nothing changes,
    and is the identity on its own results.  Iterative so that very deep
    documents do not hit the interpreter recursion limit.
    """
    if d.flatten_cache is not None:
        return d.flatten_cache
    stack = [d]
    while stack:
        node = stack[-1]
        if node.flatten_cache is not None:
            stack.pop()
            continue
        k = node.kind
        if k == TEXT or k == FAIL:
            node.flatten_cache = node
            stack.pop()
        elif k == NEWLINE:
            res = text(node.flatten_alt) if node.flatten_alt is not None else fail()
            res.flatten_cache = res
            node.flatten_cache = res
            stack.pop()
        else:
            kids = _children(node)
            pending = [c for c in kids if c.flatten_cache is None]
            if pending:
                stack.extend(pending)
                continue
            fk = tuple(c.flatten_cache for c in kids)
            if all(f is c for f, c in zip(fk, kids)):
                res = node
            elif k == CONCAT:
                res = concat(fk[0], fk[1])
            elif k == ALT:
                res = alt(fk[0], fk[1])
            elif k == NEST:
                res = nest(node.amount, fk[0])
            elif k == ALIGN:
                res = align(fk[0])
            elif k == RESET:
                res = reset(fk[0])
            else:  # WITH_COST
                res = with_cost(node.extra_cost, fk[0])
            res.flatten_cache = res
            node.flatten_cache = res
            stack.pop()
    return d.flatten_cache


# ---------------------------------------------------------------------------
# Derived combinators
# ---------------------------------------------------------------------------

def group(d: Doc) -> Doc:
    """Choice between d and its flattened form."""
    return alt(d, flatten(d))


def vcat(a: Doc, b: Doc) -> Doc:
    """a above b (a <> nl <> b)."""
    return concat(concat(a, nl()), b)


def acat(a: Doc, b: Doc) -> Doc:
    """a beside b, with b aligned at its placement column."""
    return concat(a, align(b))


def fill_sep(words) -> Doc:
    """Word wrap: join words, breaking between words where needed."""
    words = list(words)
    if not words:
        raise ValueError("fill_sep requires at least one word")
    d = text(words[0])
    for w in words[1:]:
        d = concat(d, concat(alt(text(" "), nl()), text(w)))
    return d


# ---------------------------------------------------------------------------
# Utilities
# ---------------------------------------------------------------------------

def reachable_nodes(d: Doc):
    """All distinct nodes reachable from d (iterative DFS)."""
    seen = {}
    stack = [d]
    while stack:
        n = stack.pop()
        if n.id in seen:
            continue
        seen[n.id] = n
        stack.extend(_children(n))
    return list(seen.values())


def is_choiceless(d: Doc) -> bool:
    return all(n.kind != ALT for n in reachable_nodes(d))
