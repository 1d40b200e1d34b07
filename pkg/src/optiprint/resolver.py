"""The optimizing printer: measures, Pareto frontiers, tainting, and print.

resolve() walks the document DAG computing, for each (node, column, indent)
context, either a Pareto frontier of measures (last-line length strictly
decreasing, cost strictly increasing, domination-free) or a Tainted deferred
single measure once the computation width limit W is exceeded.  print_doc()
picks the cheapest measure and renders its payload.
"""

from __future__ import annotations

import sys
import threading
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import doc as D
from .semantics import NoLayoutError


class Measure:
    __slots__ = ("last", "cost", "payload", "maxx", "maxy")

    def __init__(self, last, cost, payload, maxx=None, maxy=None):
        self.last = last
        self.cost = cost
        self.payload = payload
        self.maxx = maxx
        self.maxy = maxy

    def __repr__(self):
        return "<Measure last=%d cost=%r>" % (self.last, self.cost)


class Frontier:
    __slots__ = ("measures",)

    def __init__(self, measures):
        self.measures = measures

    def __repr__(self):
        return "Frontier(%r)" % (self.measures,)


class Tainted:
    """A deferred single measure; the body runs at most once."""

    __slots__ = ("_thunk", "_value", "forced")

    def __init__(self, thunk):
        self._thunk = thunk
        self._value = None
        self.forced = False

    def force(self):
        if not self.forced:
            self._value = self._thunk()
            self._thunk = None
            self.forced = True
        return self._value


class _EmptySet:
    """All branches fail; identity for merge, error at top level."""

    __slots__ = ()

    def __repr__(self):
        return "EmptySet"


EMPTY_SET = _EmptySet()


@dataclass
class ResolverConfig:
    factory: object
    width_limit: int = 100
    fused: bool = False
    ghost: bool = False
    memoize: str = "weighted"  # "weighted" | "all" | "off"
    memo_weight_limit: int = 6  # informational; node flagging uses doc.MEMO_WEIGHT_LIMIT
    bias_heuristic: bool = False  # reserved optional heuristic, default off
    on_frontier: Optional[Callable] = None  # debug hook: called with each Frontier
    on_deferred: Optional[Callable] = None  # debug hook: called with each delayed Tainted
    on_resolved: Optional[Callable] = None  # debug hook: called with (d, c, i, set) per resolve


@dataclass
class PrintResult:
    layout: list
    cost: object
    tainted: bool
    measure: object = field(default=None, repr=False)

    @property
    def text(self):
        return "\n".join(self.layout)


# ---------------------------------------------------------------------------
# Measure-set operations
# ---------------------------------------------------------------------------

def dominates(factory, a, b):
    """a is no worse than b in both last length and cost."""
    return a.last <= b.last and factory.le(a.cost, b.cost)


def measure_concat(factory, a, b, fused):
    if fused:
        payload = (a.payload, b.payload)
    else:
        payload = D.concat(a.payload, b.payload)
    m = Measure(b.last, factory.add(a.cost, b.cost), payload)
    if a.maxx is not None:
        m.maxx = max(a.maxx, b.maxx)
        m.maxy = max(a.maxy, b.maxy)
    return m


def dedup(factory, ms):
    """Prune a sorted candidate list (last strictly down, cost up) into a frontier."""
    out = []
    for m in ms:
        while out and dominates(factory, m, out[-1]):
            out.pop()
        out.append(m)
    return out


def merge(factory, sa, sb):
    """Combine two measure sets from the same context; left-biased on ties."""
    if sa is EMPTY_SET:
        return sb
    if sb is EMPTY_SET:
        return sa
    if isinstance(sb, Tainted):
        return sa
    if isinstance(sa, Tainted):
        return sb
    xs = sa.measures
    ys = sb.measures
    out = []
    ix = iy = 0
    nx = len(xs)
    ny = len(ys)
    if factory.tuple_lex:
        while ix < nx and iy < ny:
            x = xs[ix]
            y = ys[iy]
            if x.last <= y.last and x.cost <= y.cost:
                iy += 1
            elif y.last <= x.last and y.cost <= x.cost:
                ix += 1
            elif x.last > y.last:
                out.append(x)
                ix += 1
            else:
                out.append(y)
                iy += 1
    else:
        le = factory.le
        while ix < nx and iy < ny:
            x = xs[ix]
            y = ys[iy]
            if x.last <= y.last and le(x.cost, y.cost):
                iy += 1
            elif y.last <= x.last and le(y.cost, x.cost):
                ix += 1
            elif x.last > y.last:
                out.append(x)
                ix += 1
            else:
                out.append(y)
                iy += 1
    out.extend(xs[ix:])
    out.extend(ys[iy:])
    return Frontier(out)


def taint(s):
    """Collapse a frontier to a deferred singleton holding its cheapest measure."""
    if isinstance(s, Frontier):
        m0 = s.measures[0]
        t = Tainted(lambda: m0)
        return t
    return s


def lift(s, f):
    """Map a measure adjuster over a set, through a Tainted without forcing it."""
    if s is EMPTY_SET:
        return s
    if isinstance(s, Tainted):
        return Tainted(lambda: f(s.force()))
    return Frontier([f(m) for m in s.measures])


# ---------------------------------------------------------------------------
# The resolver
# ---------------------------------------------------------------------------

class _Resolver:
    def __init__(self, cfg):
        self.cfg = cfg
        self.factory = cfg.factory
        self.W = cfg.width_limit
        self.memo = {}
        self.fused = cfg.fused
        self.ghost = cfg.ghost
        self.memo_all = cfg.memoize == "all"
        self.memo_off = cfg.memoize == "off"
        self.on_frontier = cfg.on_frontier
        self.on_deferred = cfg.on_deferred
        self.on_resolved = cfg.on_resolved
        self.hooks = (
            cfg.on_frontier is not None or cfg.on_resolved is not None
        )
        # Leaf right-operand fast paths are only safe when no observer can
        # tell the difference.
        self.fast_leaves = (
            not cfg.ghost
            and not self.hooks
            and cfg.on_deferred is None
            and cfg.memoize != "all"
        )
        self.mk = self._frontier if cfg.on_frontier is not None else Frontier

    def _fire_hooks(self, d, c, i, s):
        hook = self.on_frontier
        if hook is not None and isinstance(s, Frontier):
            hook(s)
        bhook = self.on_resolved
        if bhook is not None:
            bhook(d, c, i, s)

    def _forced_measure(self, d, c, i):
        s = self.resolve(d, c, i, True)
        if s is EMPTY_SET:
            raise NoLayoutError("document evaluates to no layout")
        if isinstance(s, Frontier):
            return s.measures[0]
        return s.force()

    def _leaf_payload(self, d, i):
        # Fused payloads are just the emitted token (strings nested in pairs);
        # the newline token bakes in the indent known at resolve time.
        if not self.fused:
            return d
        if d.kind == D.TEXT:
            return d.text
        return "\n" + " " * i

    def resolve(self, d, c, i, deep=False):
        factory = self.factory
        W = self.W
        k = d.kind
        memo_key = None
        if not deep:
            if (c > W or i > W) and k != D.FAIL:
                # Delay immediately: beyond the limit nothing is computed
                # until the result is actually chosen.
                t = Tainted(lambda: self._forced_measure(d, c, i))
                hook = self.on_deferred
                if hook is not None:
                    hook(t)
                return t
            if not self.memo_off and (self.memo_all or d.is_memo_point):
                memo_key = (d.id, c, i)
                s = self.memo.get(memo_key)
                if s is not None:
                    if self.hooks:
                        self._fire_hooks(d, c, i, s)
                    return s

        if k == D.CONCAT:
            sa = self.resolve(d.left, c, i)
            if sa is EMPTY_SET:
                s = EMPTY_SET
            elif isinstance(sa, Tainted):
                def thunk(sa=sa, d=d, i=i):
                    ma = sa.force()
                    sb = self.resolve(d.right, ma.last, i)
                    if sb is EMPTY_SET:
                        raise NoLayoutError("document evaluates to no layout")
                    if isinstance(sb, Frontier):
                        mb = sb.measures[0]
                    else:
                        mb = sb.force()
                    return measure_concat(self.factory, ma, mb, self.fused)
                s = Tainted(thunk)
            else:
                fused = self.fused
                ghost = self.ghost
                add = factory.add
                le = factory.le
                right = d.right
                mk = self.mk
                rk = right.kind
                fast = self.fast_leaves
                if fast and rk == D.TEXT:
                    # Inlined right-text resolution: the child's measure is
                    # the same whether delayed or not, so compute it directly
                    # and classify by the width limit.  Left lasts strictly
                    # decrease, so tainted candidates form a prefix and the
                    # untainted rest prunes into a frontier in one sweep.
                    n = len(right.text)
                    pb = right.text if fused else right
                    tc = factory.text_cost
                    out = []
                    fallback = None
                    if factory.tuple_lex:
                        for ma in sa.measures:
                            c2 = ma.last
                            last = c2 + n
                            t0, t1 = tc(c2, n)
                            ca = ma.cost
                            cost = (ca[0] + t0, ca[1] + t1)
                            if last > W:
                                if fallback is None:
                                    payload = (ma.payload, pb) if fused else D.concat(ma.payload, right)
                                    fallback = Measure(last, cost, payload)
                                continue
                            while out and cost <= out[-1].cost:
                                out.pop()
                            out.append(
                                Measure(
                                    last,
                                    cost,
                                    (ma.payload, pb) if fused else D.concat(ma.payload, right),
                                )
                            )
                    else:
                        for ma in sa.measures:
                            c2 = ma.last
                            last = c2 + n
                            cost = add(ma.cost, tc(c2, n))
                            if last > W:
                                if fallback is None:
                                    payload = (ma.payload, pb) if fused else D.concat(ma.payload, right)
                                    fallback = Measure(last, cost, payload)
                                continue
                            while out and le(cost, out[-1].cost):
                                out.pop()
                            out.append(
                                Measure(
                                    last,
                                    cost,
                                    (ma.payload, pb) if fused else D.concat(ma.payload, right),
                                )
                            )
                    s = mk(out) if out else Tainted(lambda: fallback)
                elif fast and rk == D.NEWLINE:
                    # Inlined right-newline resolution: every candidate ends
                    # at column i, so the first one whose context is inside
                    # the limit (costs increase along the frontier) wins.
                    nlc = factory.nl_cost(i)
                    pb = self._leaf_payload(right, i)
                    s = None
                    for ma in sa.measures:
                        if ma.last <= W:
                            payload = (ma.payload, pb) if fused else D.concat(ma.payload, right)
                            s = mk([Measure(i, add(ma.cost, nlc), payload)])
                            break
                    if s is None:
                        ma = sa.measures[0]
                        payload = (ma.payload, pb) if fused else D.concat(ma.payload, right)
                        m = Measure(i, add(ma.cost, nlc), payload)
                        s = Tainted(lambda: m)
                else:
                    resolve_ = self.resolve
                    result = EMPTY_SET
                    tlex = factory.tuple_lex and not ghost
                    for ma in sa.measures:
                        sb = resolve_(right, ma.last, i)
                        if sb is EMPTY_SET:
                            continue
                        if isinstance(sb, Tainted):
                            sk = Tainted(
                                lambda ma=ma, sb=sb: measure_concat(factory, ma, sb.force(), fused)
                            )
                            result = merge(factory, result, sk)
                            continue
                        # Within sb lasts strictly decrease, so a candidate
                        # dominates earlier ones exactly when its cost is no
                        # worse: build and prune in a single sweep.
                        ca = ma.cost
                        pa = ma.payload
                        out = []
                        if tlex:
                            ca0, ca1 = ca
                            for mb in sb.measures:
                                cb = mb.cost
                                cost = (ca0 + cb[0], ca1 + cb[1])
                                while out and cost <= out[-1].cost:
                                    out.pop()
                                out.append(
                                    Measure(
                                        mb.last,
                                        cost,
                                        (pa, mb.payload) if fused else D.concat(pa, mb.payload),
                                    )
                                )
                        elif ghost:
                            for mb in sb.measures:
                                mm = measure_concat(factory, ma, mb, fused)
                                mc = mm.cost
                                while out and le(mc, out[-1].cost):
                                    out.pop()
                                out.append(mm)
                        else:
                            for mb in sb.measures:
                                cost = add(ca, mb.cost)
                                while out and le(cost, out[-1].cost):
                                    out.pop()
                                out.append(
                                    Measure(
                                        mb.last,
                                        cost,
                                        (pa, mb.payload) if fused else D.concat(pa, mb.payload),
                                    )
                                )
                        result = merge(factory, result, mk(out))
                    s = result

        elif k == D.TEXT:
            n = len(d.text)
            m = Measure(c + n, factory.text_cost(c, n), self._leaf_payload(d, i))
            if self.ghost:
                m.maxx = c + n
                m.maxy = i
            if c + n > W or i > W:
                s = Tainted(lambda: m)
            else:
                s = Frontier([m])

        elif k == D.NEWLINE:
            m = Measure(i, factory.nl_cost(i), self._leaf_payload(d, i))
            if self.ghost:
                m.maxx = max(c, i)
                m.maxy = i
            if c > W or i > W:
                s = Tainted(lambda: m)
            else:
                s = Frontier([m])

        elif k == D.FAIL:
            s = EMPTY_SET

        elif k == D.NEST:
            s = self.resolve(d.inner, c, i + d.amount)
            if not self.fused:
                s = lift(s, self._adjust_nest(d))

        elif k == D.ALIGN:
            s = self.resolve(d.inner, c, c)
            if i > W:
                s = taint(s)
            if not (self.fused and not self.ghost and i <= W and self.on_frontier is None):
                s = self._lift_frontier(s, self._adjust_align(d, i))

        elif k == D.RESET:
            s = self.resolve(d.inner, c, 0)
            if i > W:
                s = taint(s)
            if not (self.fused and not self.ghost and i <= W and self.on_frontier is None):
                s = self._lift_frontier(s, self._adjust_reset(d, i))

        elif k == D.ALT:
            s = merge(factory, self.resolve(d.left, c, i), self.resolve(d.right, c, i))

        elif k == D.WITH_COST:
            s = self.resolve(d.inner, c, i)
            s = self._lift_frontier(s, self._adjust_cost(d))

        else:
            raise AssertionError("unknown node kind")

        if memo_key is not None:
            self.memo[memo_key] = s
        if self.hooks and not deep:
            self._fire_hooks(d, c, i, s)
        return s

    # -- adjusters ---------------------------------------------------------

    def _adjust_nest(self, d):
        if self.fused:
            return lambda m: m

        def f(m, n=d.amount):
            m2 = Measure(m.last, m.cost, D.nest(n, m.payload), m.maxx, m.maxy)
            return m2

        return f

    def _adjust_align(self, d, i):
        fused = self.fused
        ghost = self.ghost

        def f(m):
            payload = m.payload if fused else D.align(m.payload)
            maxy = max(m.maxy, i) if (ghost and m.maxy is not None) else m.maxy
            return Measure(m.last, m.cost, payload, m.maxx, maxy)

        return f

    def _adjust_reset(self, d, i):
        fused = self.fused
        ghost = self.ghost

        def f(m):
            payload = m.payload if fused else D.reset(m.payload)
            maxy = max(m.maxy, i) if (ghost and m.maxy is not None) else m.maxy
            return Measure(m.last, m.cost, payload, m.maxx, maxy)

        return f

    def _adjust_cost(self, d):
        factory = self.factory
        fused = self.fused
        extra = d.extra_cost

        def f(m):
            payload = m.payload if fused else D.with_cost(extra, m.payload)
            return Measure(m.last, factory.add(extra, m.cost), payload, m.maxx, m.maxy)

        return f

    # -- helpers -----------------------------------------------------------

    def _frontier(self, measures):
        s = Frontier(measures)
        hook = self.on_frontier
        if hook is not None:
            hook(s)
        return s

    def _lift_frontier(self, s, f):
        out = lift(s, f)
        if isinstance(out, Frontier):
            hook = self.on_frontier
            if hook is not None:
                hook(out)
        return out


def resolve(d, c, i, cfg):
    """One-shot resolve with a fresh memo table (mainly for tests)."""
    return _Resolver(cfg).resolve(d, c, i)


# ---------------------------------------------------------------------------
# Rendering of chosen payloads
# ---------------------------------------------------------------------------

def render_payload(d, c=0, i=0):
    """Iterative renderer for choiceless payload documents (no flatten mode)."""
    lines = []
    cur = []
    col = c
    stack = [(d, i)]
    while stack:
        node, ind = stack.pop()
        k = node.kind
        if k == D.TEXT:
            if node.text:
                cur.append(node.text)
                col += len(node.text)
        elif k == D.NEWLINE:
            lines.append("".join(cur))
            cur = [" " * ind] if ind else []
            col = ind
        elif k == D.CONCAT:
            stack.append((node.right, ind))
            stack.append((node.left, ind))
        elif k == D.NEST:
            stack.append((node.inner, ind + node.amount))
        elif k == D.ALIGN:
            stack.append((node.inner, col))
        elif k == D.RESET:
            stack.append((node.inner, 0))
        elif k == D.WITH_COST:
            stack.append((node.inner, ind))
        elif k == D.FAIL:
            raise NoLayoutError("fail node in chosen payload")
        else:
            raise AssertionError("alt node in choiceless payload")
    lines.append("".join(cur))
    return lines


# ---------------------------------------------------------------------------
# Deep-stack execution
# ---------------------------------------------------------------------------

_DEEP_STACK_BYTES = 512 * 1024 * 1024
_DEEP_RECURSION_LIMIT = 5_000_000


def run_with_deep_stack(fn):
    """Run fn in a worker thread with a large stack and recursion limit.

    Resolution and payload forcing recurse to the depth of the document,
    which for benchmark-scale chains far exceeds CPython defaults.
    """
    box = {}

    def runner():
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(_DEEP_RECURSION_LIMIT)
        try:
            box["value"] = fn()
        except BaseException as e:  # propagate to caller
            box["error"] = e
        finally:
            sys.setrecursionlimit(old)

    old_size = threading.stack_size(_DEEP_STACK_BYTES)
    try:
        t = threading.Thread(target=runner, name="optiprint-worker")
        t.start()
    finally:
        threading.stack_size(old_size)
    t.join()
    if "error" in box:
        raise box["error"]
    return box["value"]


# ---------------------------------------------------------------------------
# Top-level print
# ---------------------------------------------------------------------------

def _print_in_thread(d, cfg):
    r = _Resolver(cfg)
    s = r.resolve(d, 0, 0)
    if s is EMPTY_SET:
        raise NoLayoutError("document evaluates to no layout")
    if isinstance(s, Frontier):
        m = s.measures[0]
        tainted = False
    else:
        m = s.force()
        tainted = True
    if cfg.fused:
        out = []
        stack = [m.payload]
        while stack:
            p = stack.pop()
            if type(p) is tuple:
                stack.append(p[1])
                stack.append(p[0])
            else:
                out.append(p)
        layout = "".join(out).split("\n")
    else:
        layout = render_payload(m.payload, 0, 0)
    return PrintResult(layout, m.cost, tainted, m)


def print_doc(d, cfg: ResolverConfig) -> PrintResult:
    """Resolve at (0, 0), pick the cheapest measure, render its payload."""
    return run_with_deep_stack(lambda: _print_in_thread(d, cfg))
