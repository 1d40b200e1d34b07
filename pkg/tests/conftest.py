"""Shared test helpers: seeded random document corpus and structural checks."""

import random

import pytest

from optiprint import doc as D
from optiprint.semantics import structural_key

WORDS = "abcdefgh"


def random_word(rng, max_len=8, min_len=0):
    n = rng.randint(min_len, max_len)
    return "".join(rng.choice(WORDS) for _ in range(n))


def random_doc(
    rng,
    max_nodes=40,
    max_alts=6,
    max_text=8,
    max_nest=6,
    factory=None,
    allow_hard_nl=True,
):
    """One random document within the corpus bounds.

    Regenerates until the reachable graph satisfies the node/alt limits
    (group() adds alt nodes and flatten copies, so post-hoc checking is the
    simplest reliable bound).  with_cost nodes appear only when a factory is
    given (extra costs must be factory-reachable values).
    """
    for _ in range(1000):
        d = _random_doc_once(rng, max_text, max_nest, factory, allow_hard_nl)
        nodes = D.reachable_nodes(d)
        if len(nodes) <= max_nodes and sum(1 for n in nodes if n.kind == D.ALT) <= max_alts:
            return d
    raise AssertionError("could not generate a document within bounds")


def _random_doc_once(rng, max_text, max_nest, factory, allow_hard_nl):
    def leaf():
        r = rng.random()
        if r < 0.55:
            return D.text(random_word(rng, max_text))
        if r < 0.85:
            return D.nl()
        if r < 0.95:
            return D.newline(random_word(rng, 2))
        if allow_hard_nl:
            return D.hard_nl()
        return D.nl()

    def go(depth):
        if depth <= 0:
            return leaf()
        r = rng.random()
        if r < 0.30:
            return D.concat(go(depth - 1), go(depth - 1))
        if r < 0.45:
            return D.alt(go(depth - 1), go(depth - 1))
        if r < 0.55:
            return D.group(go(depth - 1))
        if r < 0.70:
            return D.nest(rng.randint(0, max_nest), go(depth - 1))
        if r < 0.80:
            return D.align(go(depth - 1))
        if r < 0.85:
            return D.reset(go(depth - 1))
        if r < 0.90 and factory is not None:
            extra = factory.nl_cost(rng.randint(0, 4))
            return D.with_cost(extra, go(depth - 1))
        return leaf()

    return go(rng.randint(1, 4))


def random_choiceless_doc(rng, max_text=8, max_nest=6, soft_only=True):
    """Random document with no alt (and optionally no hard newline)."""

    def go(depth):
        if depth <= 0:
            r = rng.random()
            if r < 0.6:
                return D.text(random_word(rng, max_text))
            if r < 0.9 or soft_only:
                return D.nl() if rng.random() < 0.7 else D.newline(random_word(rng, 2))
            return D.hard_nl()
        r = rng.random()
        if r < 0.45:
            return D.concat(go(depth - 1), go(depth - 1))
        if r < 0.65:
            return D.nest(rng.randint(0, max_nest), go(depth - 1))
        if r < 0.80:
            return D.align(go(depth - 1))
        if r < 0.88:
            return D.reset(go(depth - 1))
        return D.concat(go(depth - 1), go(depth - 1))

    return go(rng.randint(1, 4))


def widen_keys(d):
    from optiprint.semantics import widen

    return {structural_key(cd) for cd in widen(d)}


@pytest.fixture
def rng():
    return random.Random(12345)
