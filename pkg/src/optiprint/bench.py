"""Seeded benchmark generators and the timing harness.

All randomness flows through a splitmix-style 64-bit PRNG so the same seed
reproduces byte-identical documents on any platform.  Timing measures print
only (monotonic clock, median of 3), never document generation.
"""

from __future__ import annotations

import gc
import time
from dataclasses import dataclass

from . import doc as D
from .costs import QuadraticCost
from .frontends import StyleConfig, json_to_doc, sexp_ast_to_doc
from .resolver import ResolverConfig, print_doc, run_with_deep_stack

MASK64 = (1 << 64) - 1

# Guard against accidental huge allocations from a typo'd size.
MAX_SIZE = 10_000_000

FAMILIES = ("concat", "fillsep", "flatten", "sexpfull", "randfit", "randover", "json")


class SplitMix64:
    """splitmix64: golden-gamma increment, two xor-shift-multiply mixes."""

    def __init__(self, seed):
        self.state = seed & MASK64

    def next_u64(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo, hi):
        """Uniform-ish integer in [lo, hi]."""
        return lo + self.next_u64() % (hi - lo + 1)

    def choice(self, seq):
        return seq[self.next_u64() % len(seq)]


@dataclass
class BenchSpec:
    family: str
    size: int
    seed: int = 0
    page_width: int = 80
    width_limit: int = 100
    factory_name: str = "quadratic"

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError("unknown benchmark family: %s" % self.family)
        if self.size <= 0:
            raise ValueError("size must be positive")
        if self.size > MAX_SIZE:
            raise ValueError("size exceeds the guard limit %d" % MAX_SIZE)


@dataclass
class BenchReport:
    gen_ms: float
    time_ms: float
    lines: int
    tainted: bool
    layout: list


_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _word(rng, lo, hi):
    return "".join(rng.choice(_LETTERS) for _ in range(rng.randint(lo, hi)))


def gen_concat(n, rng):
    """Left-nested chain of n single-character texts."""
    d = D.text(rng.choice(_LETTERS))
    for _ in range(n - 1):
        d = D.concat(d, D.text(rng.choice(_LETTERS)))
    return d


def gen_fillsep(n, rng):
    return D.fill_sep(_word(rng, 1, 8) for _ in range(n))


def gen_flatten(n, rng):
    """n-deep chain of groups around a two-line core: repeated flattening."""
    d = D.vcat(D.text("x"), D.text("x"))
    for _ in range(n):
        d = D.group(D.concat(D.text("x"), D.concat(D.nl(), d)))
    return d


def gen_sexpfull(depth, rng):
    """Complete binary tree of atoms as an S-expression document."""

    def build(k):
        if k == 0:
            return "a"
        return [build(k - 1), build(k - 1)]

    return sexp_ast_to_doc(build(depth), StyleConfig())


def _dyck_tree(n, rng, atom_lo, atom_hi, long_atom_every=0):
    """Random tree of n atoms grown by a random parenthesis walk."""
    root = []
    stack = [root]
    placed = 0
    while placed < n:
        cur = stack[-1]
        r = rng.next_u64() % 4
        if r == 0 and len(stack) < 60:
            child = []
            cur.append(child)
            stack.append(child)
        elif r == 1 and len(stack) > 1 and cur:
            stack.pop()
        else:
            placed += 1
            if long_atom_every and placed % long_atom_every == 0:
                cur.append("z" * (atom_hi * 20))
            else:
                cur.append(_word(rng, atom_lo, atom_hi))
    while len(stack) > 1:
        if not stack[-1]:
            stack[-1].append(_word(rng, atom_lo, atom_hi))
        stack.pop()
    return root


def _min_width_estimate(ast, depth=1):
    """Smallest page width at which the tree can render without overflow."""
    if isinstance(ast, str):
        return depth + len(ast)
    if not ast:
        return depth + 2
    return max(_min_width_estimate(e, depth + 1) for e in ast)


def gen_randfit(n, rng, page_width):
    for _ in range(200):
        ast = _dyck_tree(n, rng, 1, 3)
        if _min_width_estimate(ast) <= page_width:
            return sexp_ast_to_doc(ast, StyleConfig())
    raise RuntimeError("could not generate a fitting random tree")


def gen_randover(n, rng, page_width):
    for _ in range(200):
        ast = _dyck_tree(n, rng, 1, 8, long_atom_every=25)
        if _min_width_estimate(ast) > page_width:
            return sexp_ast_to_doc(ast, StyleConfig())
    raise RuntimeError("could not generate an overflowing random tree")


def gen_json(n, rng):
    """Synthesized nested JSON with n scalar leaves."""

    def value(budget):
        if budget <= 1:
            r = rng.next_u64() % 4
            if r == 0:
                return rng.randint(0, 99999)
            if r == 1:
                return _word(rng, 1, 10)
            if r == 2:
                return True
            return None
        kids = rng.randint(2, min(6, budget))
        per = budget // kids
        sizes = [per] * kids
        sizes[0] += budget - per * kids
        if rng.next_u64() % 2 == 0:
            return {("k%d_%s" % (j, _word(rng, 1, 5))): value(sizes[j]) for j in range(kids)}
        return [value(s) for s in sizes]

    import json as _json

    return json_to_doc(_json.dumps(value(n)), StyleConfig())


def generate(spec: BenchSpec) -> D.Doc:
    rng = SplitMix64(spec.seed)
    fam = spec.family
    if fam == "concat":
        return gen_concat(spec.size, rng)
    if fam == "fillsep":
        return gen_fillsep(spec.size, rng)
    if fam == "flatten":
        return gen_flatten(spec.size, rng)
    if fam == "sexpfull":
        return gen_sexpfull(spec.size, rng)
    if fam == "randfit":
        return gen_randfit(spec.size, rng, spec.page_width)
    if fam == "randover":
        return gen_randover(spec.size, rng, spec.page_width)
    return gen_json(spec.size, rng)


def run_bench(spec: BenchSpec, factory=None) -> BenchReport:
    """Generate the family document, print it 3 times, report the median."""
    if factory is None:
        from .costs import FACTORIES

        factory = FACTORIES[spec.factory_name](spec.page_width)
    t0 = time.monotonic()
    d = run_with_deep_stack(lambda: generate(spec))
    gen_ms = (time.monotonic() - t0) * 1000.0

    # Fused payloads produce the same layouts with less allocation.  The
    # resolver's data is acyclic, so cycle collection during the timed runs
    # is pure overhead; pause it.
    cfg = ResolverConfig(factory=factory, width_limit=spec.width_limit, fused=True)
    times = []
    result = None
    gc_was_enabled = gc.isenabled()
    gc.disable()
    try:
        for _ in range(3):
            t0 = time.monotonic()
            result = print_doc(d, cfg)
            times.append((time.monotonic() - t0) * 1000.0)
    finally:
        if gc_was_enabled:
            gc.enable()
    times.sort()
    return BenchReport(gen_ms, times[1], len(result.layout), result.tainted, result.layout)
