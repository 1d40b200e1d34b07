"""Frontends that build documents: doc-IR text format, JSON, S-expressions."""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import doc as D


class ParseError(ValueError):
    def __init__(self, message, line, col):
        super().__init__("%s at line %d, column %d" % (message, line, col))
        self.line = line
        self.col = col


@dataclass
class StyleConfig:
    indent_width: int = 2
    # S-expression styles; both on by default.  With only one enabled the
    # frontend emits that single form without a choice node.
    sexp_horizontal: bool = True
    sexp_vertical: bool = True

    def __post_init__(self):
        if self.indent_width < 0:
            raise ValueError("indent_width must be >= 0")


# ---------------------------------------------------------------------------
# Doc-IR: an S-expression document format with explicit sharing
#
#   (text "s") (nl) (newline "s") (hardnl) (fail)
#   (concat D D) (nest N D) (align D) (reset D) (alt D D)
#   (group D) (vcat D D) (acat D D) (flatten D)
#   (let X D B) (ref X)
# ---------------------------------------------------------------------------

class _Token:
    __slots__ = ("kind", "value", "line", "col")

    def __init__(self, kind, value, line, col):
        self.kind = kind  # "(" | ")" | "atom" | "string" | "int"
        self.value = value
        self.line = line
        self.col = col


def _tokenize_ir(source):
    tokens = []
    line = 1
    col = 1
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            i += 1
            col += 1
        elif ch == ";":
            while i < n and source[i] != "\n":
                i += 1
        elif ch in "()":
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
        elif ch == '"':
            start_line, start_col = line, col
            i += 1
            col += 1
            out = []
            while True:
                if i >= n:
                    raise ParseError("unterminated string", start_line, start_col)
                ch = source[i]
                if ch == '"':
                    i += 1
                    col += 1
                    break
                if ch == "\n":
                    raise ParseError("newline inside string literal", line, col)
                if ch == "\\":
                    if i + 1 >= n:
                        raise ParseError("dangling escape", line, col)
                    esc = source[i + 1]
                    if esc == "n":
                        raise ParseError("text content must be newline-free", line, col)
                    if esc not in ('"', "\\"):
                        raise ParseError("unknown escape \\%s" % esc, line, col)
                    out.append(esc)
                    i += 2
                    col += 2
                else:
                    out.append(ch)
                    i += 1
                    col += 1
            tokens.append(_Token("string", "".join(out), start_line, start_col))
        else:
            start_line, start_col = line, col
            j = i
            while j < n and source[j] not in ' \t\r\n();"':
                j += 1
            word = source[i:j]
            col += j - i
            i = j
            tokens.append(_Token("atom", word, start_line, start_col))
    return tokens


class _IRParser:
    def __init__(self, source):
        self.tokens = _tokenize_ir(source)
        self.pos = 0

    def _peek(self):
        if self.pos >= len(self.tokens):
            return None
        return self.tokens[self.pos]

    def _next(self, expect=None):
        tok = self._peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else _Token("", "", 1, 1)
            raise ParseError("unexpected end of input", last.line, last.col)
        if expect is not None and tok.kind != expect:
            raise ParseError("expected %s, got %r" % (expect, tok.value), tok.line, tok.col)
        self.pos += 1
        return tok

    def parse(self):
        doc = self._form({})
        tok = self._peek()
        if tok is not None:
            raise ParseError("trailing input", tok.line, tok.col)
        return doc

    def _string_arg(self, head):
        tok = self._next()
        if tok.kind != "string":
            raise ParseError("%s expects a string literal" % head, tok.line, tok.col)
        return tok

    def _nat_arg(self, head):
        tok = self._next()
        if tok.kind != "atom" or not tok.value.isdigit():
            raise ParseError("%s expects a natural number" % head, tok.line, tok.col)
        return int(tok.value)

    def _form(self, env):
        tok = self._next()
        if tok.kind != "(":
            raise ParseError("expected (", tok.line, tok.col)
        head_tok = self._next()
        if head_tok.kind != "atom":
            raise ParseError("expected a form name", head_tok.line, head_tok.col)
        head = head_tok.value

        if head == "text":
            s = self._string_arg(head)
            self._next(")")
            return D.text(s.value)
        if head == "nl":
            self._next(")")
            return D.nl()
        if head == "newline":
            s = self._string_arg(head)
            self._next(")")
            return D.newline(s.value)
        if head == "hardnl":
            self._next(")")
            return D.hard_nl()
        if head == "fail":
            self._next(")")
            return D.fail()
        if head == "concat":
            a = self._form(env)
            b = self._form(env)
            self._next(")")
            return D.concat(a, b)
        if head == "nest":
            n = self._nat_arg(head)
            inner = self._form(env)
            self._next(")")
            return D.nest(n, inner)
        if head == "align":
            inner = self._form(env)
            self._next(")")
            return D.align(inner)
        if head == "reset":
            inner = self._form(env)
            self._next(")")
            return D.reset(inner)
        if head == "alt":
            a = self._form(env)
            b = self._form(env)
            self._next(")")
            return D.alt(a, b)
        if head == "group":
            inner = self._form(env)
            self._next(")")
            return D.group(inner)
        if head == "vcat":
            a = self._form(env)
            b = self._form(env)
            self._next(")")
            return D.vcat(a, b)
        if head == "acat":
            a = self._form(env)
            b = self._form(env)
            self._next(")")
            return D.acat(a, b)
        if head == "flatten":
            inner = self._form(env)
            self._next(")")
            return D.flatten(inner)
        if head == "let":
            name_tok = self._next()
            if name_tok.kind != "atom":
                raise ParseError("let expects a name", name_tok.line, name_tok.col)
            bound = self._form(env)
            inner_env = dict(env)
            inner_env[name_tok.value] = bound
            body = self._form(inner_env)
            self._next(")")
            return body
        if head == "ref":
            name_tok = self._next()
            if name_tok.kind != "atom":
                raise ParseError("ref expects a name", name_tok.line, name_tok.col)
            self._next(")")
            if name_tok.value not in env:
                raise ParseError("unbound reference %s" % name_tok.value, name_tok.line, name_tok.col)
            return env[name_tok.value]
        raise ParseError("unknown form %s" % head, head_tok.line, head_tok.col)


def parse_doc_ir(source: str) -> D.Doc:
    """Parse doc-IR text into a document; (let X D B) shares one node."""
    return _IRParser(source).parse()


def _quote_ir(s):
    return '"%s"' % s.replace("\\", "\\\\").replace('"', '\\"')


def doc_to_ir(d: D.Doc) -> str:
    """Debug serializer; shared nodes come out as (let ...) bindings."""
    refcount = {}
    order = []

    def count(n):
        refcount[n.id] = refcount.get(n.id, 0) + 1
        if refcount[n.id] == 1:
            for c in D._children(n):
                count(c)
            order.append(n)

    count(d)
    shared = {n.id for n in order if refcount[n.id] > 1 and n.id != d.id}
    names = {}

    def emit(n, at_binding=False):
        if n.id in shared and not at_binding:
            return "(ref %s)" % names[n.id]
        k = n.kind
        if k == D.TEXT:
            return "(text %s)" % _quote_ir(n.text)
        if k == D.NEWLINE:
            if n.flatten_alt is None:
                return "(hardnl)"
            if n.flatten_alt == " ":
                return "(nl)"
            return "(newline %s)" % _quote_ir(n.flatten_alt)
        if k == D.FAIL:
            return "(fail)"
        if k == D.CONCAT:
            return "(concat %s %s)" % (emit(n.left), emit(n.right))
        if k == D.ALT:
            return "(alt %s %s)" % (emit(n.left), emit(n.right))
        if k == D.NEST:
            return "(nest %d %s)" % (n.amount, emit(n.inner))
        if k == D.ALIGN:
            return "(align %s)" % emit(n.inner)
        if k == D.RESET:
            return "(reset %s)" % emit(n.inner)
        raise ValueError("with_cost is not serializable (factory-owned cost)")

    body = None
    # Bind shared nodes innermost-first so later bindings may reference them.
    bindings = [n for n in order if n.id in shared]
    for idx, n in enumerate(bindings):
        names[n.id] = "x%d" % idx
    body = emit(d)
    for n in reversed(bindings):
        body = "(let %s %s %s)" % (names[n.id], emit(n, at_binding=True), body)
    return body


# ---------------------------------------------------------------------------
# JSON frontend
# ---------------------------------------------------------------------------

def json_to_doc(source: str, style: StyleConfig = None) -> D.Doc:
    """Build a document for JSON text.

    Every object/array independently chooses between one flat line and a
    vertical form with one member per line, indented by indent_width.
    """
    style = style or StyleConfig()
    try:
        value = json.loads(source)
    except json.JSONDecodeError as e:
        raise ParseError("invalid JSON: %s" % e.msg, e.lineno, e.colno)
    return _json_value(value, style)


def _json_container(open_s, close_s, members, style):
    if not members:
        return D.text(open_s + close_s)
    # Left-nested concatenation keeps resolution linear: big subtrees sit as
    # direct right operands and trailing separators stay on the left spine.
    body = members[0]
    for m in members[1:]:
        body = D.concat(D.concat(D.concat(body, D.text(",")), D.newline(" ")), m)
    vertical = D.concat(
        D.concat(
            D.concat(
                D.text(open_s),
                D.nest(style.indent_width, D.concat(D.newline(""), body)),
            ),
            D.newline(""),
        ),
        D.text(close_s),
    )
    return D.group(vertical)


def _json_value(v, style):
    if isinstance(v, dict):
        members = [
            D.concat(D.text(json.dumps(k) + ": "), _json_value(val, style))
            for k, val in v.items()
        ]
        return _json_container("{", "}", members, style)
    if isinstance(v, list):
        return _json_container("[", "]", [_json_value(x, style) for x in v], style)
    return D.text(json.dumps(v))


# ---------------------------------------------------------------------------
# S-expression frontend
# ---------------------------------------------------------------------------

def parse_sexp(source: str):
    """Parse S-expression text into nested lists of atom strings."""
    line = 1
    col = 1
    i = 0
    n = len(source)
    stack = []
    top = []
    count = 0
    while i < n:
        ch = source[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            i += 1
            col += 1
        elif ch == "(":
            stack.append(top)
            top = []
            i += 1
            col += 1
        elif ch == ")":
            if not stack:
                raise ParseError("unmatched )", line, col)
            done = top
            top = stack.pop()
            top.append(done)
            count += 1
            i += 1
            col += 1
        else:
            j = i
            while j < n and source[j] not in " \t\r\n()":
                j += 1
            top.append(source[i:j])
            count += 1
            col += j - i
            i = j
    if stack:
        raise ParseError("unmatched (", line, col)
    if count == 0:
        raise ParseError("empty input", line, col)
    if len(top) != 1:
        raise ParseError("expected a single S-expression", line, col)
    return top[0]


def sexp_ast_to_doc(ast, style: StyleConfig = None) -> D.Doc:
    style = style or StyleConfig()
    if isinstance(ast, str):
        return D.text(ast)
    if not ast:
        return D.text("()")
    head = sexp_ast_to_doc(ast[0], style)
    elems = [sexp_ast_to_doc(e, style) for e in ast[1:]]
    if not elems:
        return D.concat(D.concat(D.text("("), head), D.text(")"))
    # Left-nested joins keep resolution linear (see _json_container).
    horizontal = None
    vertical = None
    if style.sexp_horizontal:
        horizontal = head
        for e in elems:
            horizontal = D.concat(D.concat(horizontal, D.text(" ")), e)
    if style.sexp_vertical:
        vertical = head
        for e in elems:
            vertical = D.concat(D.concat(vertical, D.nl()), e)
    if horizontal is not None and vertical is not None:
        body = D.alt(horizontal, vertical)
    else:
        body = horizontal if horizontal is not None else vertical
    # align so that vertical arguments sit one column in, under the head
    return D.concat(D.concat(D.text("("), D.align(body)), D.text(")"))


def sexp_to_doc(source: str, style: StyleConfig = None) -> D.Doc:
    return sexp_ast_to_doc(parse_sexp(source), style)
