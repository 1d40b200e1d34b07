"""Cost factories: formulas, contracts, layout-cost folding, validity checker."""

import random

import pytest
from hypothesis import given, strategies as st

from optiprint.costs import (
    InvalidMaxLexCost,
    LinearCost,
    MaxOverflowCost,
    QuadraticCost,
    check_factory_validity,
    layout_cost,
)

EX_LINE_LENGTHS = [7, 9, 7, 1]


def example_layout():
    # line lengths [7, 9, 7, 1]; lines 2 and 3 indented by 2
    return ["x" * 7, "  " + "x" * 7, "  " + "x" * 5, "x"]


def test_linear_text_cost():
    # the 23-char flat line placed at column 3 ends at column 26, overflow 20
    assert LinearCost(6).text_cost(3, 23) == (20, 0)


def test_quadratic_text_cost():
    assert QuadraticCost(6).text_cost(3, 7) == (16, 0)
    assert QuadraticCost(6).text_cost(0, 6) == (0, 0)


def test_text_cost_of_zero_is_zero():
    for factory in (LinearCost(6), QuadraticCost(6), MaxOverflowCost(6)):
        for c in (0, 6, 100):
            assert factory.text_cost(c, 0) == factory.zero


def test_nl_cost():
    assert QuadraticCost(6).nl_cost(0) == (0, 1)
    assert QuadraticCost(6).nl_cost(40) == (0, 1)
    assert LinearCost(6).nl_cost(3) == (0, 1)
    assert MaxOverflowCost(6).nl_cost(5) == 0


def test_add_and_le():
    lin = LinearCost(6)
    assert lin.add((8, 1), (0, 2)) == (8, 3)
    assert lin.le((8, 3), (20, 0))
    mx = MaxOverflowCost(6)
    assert mx.add(4, 3) == 4


def test_add_identity_random():
    rng = random.Random(0)
    for factory in (LinearCost(6), QuadraticCost(6), MaxOverflowCost(6)):
        for _ in range(50):
            x = factory.add(
                factory.text_cost(rng.randint(0, 12), rng.randint(0, 12)),
                factory.nl_cost(rng.randint(0, 12)),
            )
            assert factory.add(x, factory.zero) == x
            assert factory.add(factory.zero, x) == x


def test_layout_cost_worked_example():
    lay = example_layout()
    assert [len(l) for l in lay] == EX_LINE_LENGTHS
    assert layout_cost(LinearCost(6), lay, 3) == (8, 3)
    assert layout_cost(QuadraticCost(6), lay, 3) == (26, 3)
    assert layout_cost(MaxOverflowCost(6), lay, 3) == 4


def test_layout_cost_flat_example():
    flat = ["x" * 23]
    assert layout_cost(LinearCost(6), flat, 3) == (20, 0)
    assert layout_cost(MaxOverflowCost(6), flat, 3) == 20


def test_layout_cost_empty_line():
    for factory in (LinearCost(6), QuadraticCost(6), MaxOverflowCost(6)):
        assert layout_cost(factory, [""], 0) == factory.zero


def test_layout_cost_rejects_empty_layout():
    with pytest.raises(ValueError):
        layout_cost(LinearCost(6), [], 0)


def _per_char_layout_cost(factory, lines, c):
    """Character-granularity oracle: charge each visible character on its own."""
    cost = factory.zero
    col = c
    for ch in lines[0]:
        cost = factory.add(cost, factory.text_cost(col, 1))
        col += 1
    for ln in lines[1:]:
        ind = len(ln) - len(ln.lstrip(" "))
        cost = factory.add(cost, factory.nl_cost(ind))
        col = ind
        for ch in ln[ind:]:
            cost = factory.add(cost, factory.text_cost(col, 1))
            col += 1
    return cost


def test_layout_cost_matches_per_char_oracle():
    rng = random.Random(42)
    for factory in (LinearCost(6), QuadraticCost(6), MaxOverflowCost(6)):
        for _ in range(200):
            lines = []
            first = "x" * rng.randint(0, 15)
            lines.append(first)
            for _ in range(rng.randint(0, 4)):
                lines.append(" " * rng.randint(0, 8) + "x" * rng.randint(0, 12))
            c = rng.randint(0, 10)
            assert layout_cost(factory, lines, c) == _per_char_layout_cost(factory, lines, c)


def test_text_split_identity():
    rng = random.Random(9)
    for factory in (LinearCost(6), QuadraticCost(6), MaxOverflowCost(6)):
        for _ in range(200):
            c = rng.randint(0, 12)
            l1 = rng.randint(0, 12)
            l2 = rng.randint(0, 12)
            assert factory.text_cost(c, l1 + l2) == factory.add(
                factory.text_cost(c, l1), factory.text_cost(c + l1, l2)
            )


def test_height_component_counts_newlines():
    rng = random.Random(1)
    for factory in (LinearCost(6), QuadraticCost(6)):
        for _ in range(100):
            lines = ["x" * rng.randint(0, 10) for _ in range(rng.randint(1, 5))]
            assert layout_cost(factory, lines, 0)[1] == len(lines) - 1


def test_total_order_on_samples():
    rng = random.Random(3)
    for factory in (LinearCost(6), QuadraticCost(6), MaxOverflowCost(6)):
        sample = [
            factory.add(
                factory.text_cost(rng.randint(0, 12), rng.randint(0, 12)),
                factory.nl_cost(rng.randint(0, 12)),
            )
            for _ in range(30)
        ]
        for a in sample:
            for b in sample:
                assert factory.le(a, b) or factory.le(b, a)
                if factory.le(a, b) and factory.le(b, a):
                    assert a == b


# -- validity checker -------------------------------------------------------

@pytest.mark.parametrize("cls", [LinearCost, QuadraticCost, MaxOverflowCost])
def test_valid_factories_pass(cls):
    report = check_factory_validity(cls(6), trials=10000, seed=2024)
    assert report.ok, report.describe()


def test_invalid_maxlex_fails():
    report = check_factory_validity(InvalidMaxLexCost(6), trials=10000, seed=2024)
    assert not report.ok
    assert report.contract == "translation-invariance"


def test_invalid_maxlex_specific_witness():
    f = InvalidMaxLexCost(6)
    a, b, c = (0, 1), (1, 0), (2, 0)
    assert f.le(a, b)
    assert f.le(c, c)
    assert f.add(a, c) == (2, 1)
    assert f.add(b, c) == (2, 0)
    assert not f.le(f.add(a, c), f.add(b, c))
    # and the witness costs are factory-reachable
    assert f.nl_cost(0) == a
    assert f.text_cost(6, 1) == b
    assert f.text_cost(6, 2) == c


def test_checker_rejects_zero_trials():
    with pytest.raises(ValueError):
        check_factory_validity(QuadraticCost(6), trials=0)


# -- property tests -----------------------------------------------------------

@given(st.integers(0, 40), st.integers(0, 40), st.integers(0, 40))
def test_text_cost_split_property(c, l1, l2):
    # measuring a text in two pieces equals measuring it whole
    for f in (LinearCost(6), QuadraticCost(6), MaxOverflowCost(10)):
        assert f.add(f.text_cost(c, l1), f.text_cost(c + l1, l2)) == f.text_cost(c, l1 + l2)


@given(
    st.integers(0, 30), st.integers(0, 30), st.integers(0, 30),
    st.integers(0, 30), st.integers(0, 30),
)
def test_translation_invariance_property(a0, a1, b0, b1, t):
    # adding a common cost never flips the order of two comparable costs
    for f in (LinearCost(6), QuadraticCost(6)):
        x, y, z = (a0, a1), (b0, b1), (t, t)
        if f.le(x, y):
            assert f.le(f.add(x, z), f.add(y, z))
            assert f.le(f.add(z, x), f.add(z, y))


@given(st.integers(0, 25), st.integers(0, 25))
def test_text_cost_monotone_in_column(c, l):
    for f in (LinearCost(6), QuadraticCost(6), MaxOverflowCost(6)):
        assert f.le(f.text_cost(c, l), f.text_cost(c + 1, l))
