"""Doc-IR parsing/serialization, JSON frontend, S-expression frontend."""

import json
import random

import pytest

from optiprint import doc as D
from optiprint.costs import QuadraticCost
from optiprint.frontends import (
    ParseError,
    StyleConfig,
    doc_to_ir,
    json_to_doc,
    parse_doc_ir,
    parse_sexp,
    sexp_to_doc,
)
from optiprint.resolver import ResolverConfig, print_doc
from optiprint.semantics import structural_key, widen

from conftest import random_doc, widen_keys


def pp(d, page_width=80, W=100):
    return print_doc(d, ResolverConfig(factory=QuadraticCost(page_width), width_limit=W)).layout


# -- doc-IR -----------------------------------------------------------------

def test_parse_alt():
    d = parse_doc_ir('(alt (text "a") (text "b"))')
    assert d.kind == D.ALT
    assert d.left.kind == D.TEXT and d.left.text == "a"
    assert d.right.text == "b"


def test_parse_let_shares_node():
    d = parse_doc_ir(
        '(let x (text "D") (alt (concat (ref x) (text "!")) '
        '(concat (ref x) (concat (nl) (text "!")))))'
    )
    assert d.left.left is d.right.left


def test_parse_unbound_ref():
    with pytest.raises(ParseError) as e:
        parse_doc_ir("(ref y)")
    assert "unbound" in str(e.value)


def test_parse_errors_have_location():
    with pytest.raises(ParseError) as e:
        parse_doc_ir('(text "a" extra)')
    assert "line 1" in str(e.value)


def test_parse_rejects_newline_in_text():
    with pytest.raises(ParseError):
        parse_doc_ir('(text "a\\nb")')


def test_parse_all_forms():
    src = (
        '(let x (nl) (concat (group (vcat (text "a") (text "b"))) '
        '(concat (acat (text "c") (text "d")) '
        '(concat (nest 3 (ref x)) (concat (align (reset (hardnl))) '
        '(alt (flatten (newline "; ")) (fail)))))))'
    )
    d = parse_doc_ir(src)
    kinds = {n.kind for n in D.reachable_nodes(d)}
    assert D.ALT in kinds and D.NEST in kinds and D.RESET in kinds


def test_ir_roundtrip_structural():
    rng = random.Random(4)
    for _ in range(100):
        d = random_doc(rng, max_nodes=25)
        d2 = parse_doc_ir(doc_to_ir(d))
        assert widen_keys(d) == widen_keys(d2)


def test_ir_roundtrip_preserves_sharing():
    x = D.text("D")
    d = D.alt(D.concat(x, D.text("!")), D.concat(x, D.text("?")))
    d2 = parse_doc_ir(doc_to_ir(d))
    assert d2.left.left is d2.right.left


# -- JSON -------------------------------------------------------------------

def test_json_flat_one_line():
    assert pp(json_to_doc('{"a": [1, 2]}')) == ['{"a": [1, 2]}']


def test_json_empty_containers():
    assert pp(json_to_doc("[]")) == ["[]"]
    assert pp(json_to_doc("{}")) == ["{}"]


def test_json_vertical_choice():
    # the long member forces a break; each container chooses independently
    lay = pp(json_to_doc('{"k": "0123456789", "j": 1}'), page_width=8)
    assert lay == ["{", '  "k": "0123456789",', '  "j": 1', "}"]


def test_json_flat_matches_canonical_dumps():
    rng = random.Random(6)
    for _ in range(30):
        value = _random_json(rng, 3)
        canonical = json.dumps(value)
        lay = pp(json_to_doc(canonical), page_width=max(len(canonical), 80))
        assert lay == [canonical]


def _random_json(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        return rng.choice([1, 2.5, "s", True, None])
    if rng.random() < 0.5:
        return {("k%d" % j): _random_json(rng, depth - 1) for j in range(rng.randint(0, 3))}
    return [_random_json(rng, depth - 1) for _ in range(rng.randint(0, 3))]


def test_json_invalid_input():
    with pytest.raises(ParseError):
        json_to_doc("{nope}")


def test_json_indent_width():
    lay = pp(json_to_doc('[1, "0123456789"]', StyleConfig(indent_width=4)), page_width=5)
    assert lay == ["[", "    1,", '    "0123456789"', "]"]


# -- S-expressions ----------------------------------------------------------

def test_sexp_parse():
    assert parse_sexp("(a (b c) d)") == ["a", ["b", "c"], "d"]
    assert parse_sexp("atom") == "atom"
    assert parse_sexp("()") == []


def test_sexp_parse_errors():
    with pytest.raises(ParseError):
        parse_sexp("(a")
    with pytest.raises(ParseError):
        parse_sexp("a)")
    with pytest.raises(ParseError):
        parse_sexp("")
    with pytest.raises(ParseError):
        parse_sexp("a b")


def test_sexp_flat():
    assert pp(sexp_to_doc("(a b)")) == ["(a b)"]


def test_sexp_vertical_shape():
    assert pp(sexp_to_doc("(a b)"), page_width=3) == ["(a", " b)"]


def test_sexp_widen_count():
    d = sexp_to_doc("((a a) (a a))")
    # three lists, two styles each
    assert len(widen(d)) == 2 ** 3


def test_sexp_single_style_flags():
    flat_only = sexp_to_doc("(a b)", StyleConfig(sexp_vertical=False))
    assert len(widen(flat_only)) == 1
    assert pp(flat_only, page_width=3) == ["(a b)"]
    vert_only = sexp_to_doc("(a b)", StyleConfig(sexp_horizontal=False))
    assert pp(vert_only) == ["(a", " b)"]


# -- proper sharing ---------------------------------------------------------

def _properly_shared(d):
    """Every node with two distinct parents is only reachable across alt branches.

    Checked by enumerating all root-to-node paths (small inputs only) and
    requiring any two paths to a node to diverge at an alt node.
    """
    paths = {}

    def walk(n, path):
        paths.setdefault(n.id, []).append(path)
        if len(paths[n.id]) > 50:
            raise AssertionError("path explosion; test input too large")
        for idx, ch in enumerate(D._children(n)):
            walk(ch, path + ((n.id, n.kind, idx),))

    walk(d, ())
    for node_paths in paths.values():
        for a in node_paths:
            for b in node_paths:
                if a is b:
                    continue
                # find the divergence point; it must be an alt node
                k = 0
                while k < min(len(a), len(b)) and a[k] == b[k]:
                    k += 1
                assert k < min(len(a), len(b)), "same node reached twice along one path"
                assert a[k][0] == b[k][0]
                if a[k][1] != D.ALT:
                    return False
    return True


def test_frontend_docs_properly_shared():
    assert _properly_shared(json_to_doc('{"a": [1, 2], "b": {"c": []}}'))
    assert _properly_shared(sexp_to_doc("((a a) (a (b c)))"))
