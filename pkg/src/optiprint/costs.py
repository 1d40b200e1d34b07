"""Cost factories: the pluggable optimality objective.

A factory owns an opaque cost type together with a total order (le), an
associative addition (add), a text placement cost and a newline cost.  The
printer never inspects cost values; it only calls these four operations.
The page width lives inside the factory.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional


class CostFactory:
    """Interface; built-ins subclass it.  All operations are pure."""

    page_width: int

    # Set to True when costs are 2-tuples added componentwise and ordered
    # lexicographically (i.e. le is plain <=); lets hot loops inline both.
    tuple_lex = False

    def le(self, a, b) -> bool:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def text_cost(self, c: int, l: int):
        raise NotImplementedError

    def nl_cost(self, i: int):
        raise NotImplementedError

    @property
    def zero(self):
        return self.text_cost(0, 0)


class LinearCost(CostFactory):
    """Sum of overflows past the page width, then number of newlines."""

    tuple_lex = True

    def __init__(self, page_width):
        self.page_width = page_width

    def le(self, a, b):
        return a <= b

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def text_cost(self, c, l):
        return (max(c + l - max(self.page_width, c), 0), 0)

    def nl_cost(self, i):
        return (0, 1)


class QuadraticCost(CostFactory):
    """Sum of squared overflows, then number of newlines.  The default."""

    tuple_lex = True

    def __init__(self, page_width):
        self.page_width = page_width

    def le(self, a, b):
        return a <= b

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1])

    def text_cost(self, c, l):
        w = self.page_width
        if c + l <= w:
            return (0, 0)
        a = max(w, c) - w
        b = c + l - max(w, c)
        return (b * (2 * a + b), 0)

    def nl_cost(self, i):
        return (0, 1)


class MaxOverflowCost(CostFactory):
    """Minimize the worst single-line overflow; newlines are free."""

    def __init__(self, page_width):
        self.page_width = page_width

    def le(self, a, b):
        return a <= b

    def add(self, a, b):
        return a if a >= b else b

    def text_cost(self, c, l):
        if l == 0:
            return 0
        return max(0, c + l - self.page_width)

    def nl_cost(self, i):
        return 0


class InvalidMaxLexCost(CostFactory):
    """Deliberately invalid: max overflow paired lexicographically with height.

    add combines componentwise as (max, sum), which breaks translation
    invariance of the lexicographic order.  Exists for negative testing of
    check_factory_validity only.
    """

    def __init__(self, page_width):
        self.page_width = page_width

    def le(self, a, b):
        return a <= b

    def add(self, a, b):
        return (max(a[0], b[0]), a[1] + b[1])

    def text_cost(self, c, l):
        if l == 0:
            return (0, 0)
        return (max(0, c + l - self.page_width), 0)

    def nl_cost(self, i):
        return (0, 1)


FACTORIES = {
    "linear": LinearCost,
    "quadratic": QuadraticCost,
    "max": MaxOverflowCost,
}

# The invalid factory is reachable only through the validity checker surface.
CHECKABLE_FACTORIES = dict(FACTORIES, **{"invalid-maxlex": InvalidMaxLexCost})


def layout_cost(factory, lines, c=0):
    """Cost of a rendered layout placed at column c.

    The first line is charged at the placement column.  Every following line
    is charged one newline cost at its indentation (leading-space count) plus
    the text cost of the visible part after the indent.  For the built-in
    factories this equals charging whole lines from column 0.
    """
    if not lines:
        raise ValueError("layout must be non-empty")
    cost = factory.text_cost(c, len(lines[0]))
    for ln in lines[1:]:
        ind = len(ln) - len(ln.lstrip(" "))
        cost = factory.add(cost, factory.nl_cost(ind))
        cost = factory.add(cost, factory.text_cost(ind, len(ln) - ind))
    return cost


@dataclass
class ValidityReport:
    ok: bool
    contract: Optional[str] = None
    witnesses: Optional[tuple] = None

    def describe(self):
        if self.ok:
            return "pass"
        return "counterexample: %s with witnesses %r" % (self.contract, self.witnesses)


def _random_cost(factory, rng, bound):
    """A random factory-reachable cost: a short add-chain of primitive costs."""
    terms = rng.randint(1, 3)
    cost = None
    for _ in range(terms):
        if rng.random() < 0.5:
            t = factory.text_cost(rng.randint(0, bound), rng.randint(0, bound))
        else:
            t = factory.nl_cost(rng.randint(0, bound))
        cost = t if cost is None else factory.add(cost, t)
    return cost


def check_factory_validity(factory, trials=10000, seed=0):
    """Randomized check of all cost-factory contracts.

    Samples naturals up to 2*page_width and reachable costs; returns a pass
    report or the first counterexample found.
    """
    if trials <= 0:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    bound = 2 * max(factory.page_width, 1)
    le = factory.le
    add = factory.add
    zero = factory.zero

    for _ in range(trials):
        a = _random_cost(factory, rng, bound)
        b = _random_cost(factory, rng, bound)
        x = _random_cost(factory, rng, bound)
        # Reuse x for y some of the time: equal addends are reachable and make
        # translation-invariance violations much easier to hit.
        y = x if rng.random() < 0.3 else _random_cost(factory, rng, bound)

        if not (le(a, b) or le(b, a)):
            return ValidityReport(False, "le-total", (a, b))
        if le(a, b) and le(b, a) and a != b:
            return ValidityReport(False, "le-antisymmetric", (a, b))
        if le(a, b) and le(b, x) and not le(a, x):
            return ValidityReport(False, "le-transitive", (a, b, x))
        if le(a, b) and le(x, y) and not le(add(a, x), add(b, y)):
            return ValidityReport(
                False, "translation-invariance", (a, b, x, y, add(a, x), add(b, y))
            )
        if add(add(a, b), x) != add(a, add(b, x)):
            return ValidityReport(False, "add-associative", (a, b, x))
        if add(a, zero) != a or add(zero, a) != a:
            return ValidityReport(False, "add-identity", (a,))

        c = rng.randint(0, bound)
        c2 = c + rng.randint(0, bound)
        l = rng.randint(0, bound)
        l1 = rng.randint(0, bound)
        l2 = rng.randint(0, bound)
        i1 = rng.randint(0, bound)
        i2 = i1 + rng.randint(0, bound)

        if not le(factory.text_cost(c, l), factory.text_cost(c2, l)):
            return ValidityReport(False, "text-monotone-column", (c, c2, l))
        split = add(factory.text_cost(c, l1), factory.text_cost(c + l1, l2))
        if factory.text_cost(c, l1 + l2) != split:
            return ValidityReport(False, "text-split", (c, l1, l2))
        if factory.text_cost(c, 0) != zero:
            return ValidityReport(False, "text-empty-is-zero", (c,))
        if not le(factory.nl_cost(i1), factory.nl_cost(i2)):
            return ValidityReport(False, "nl-monotone-indent", (i1, i2))

    return ValidityReport(True)
