"""Text syntax for quantum graphs.

Grammar (whitespace-insensitive)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" INT)?
    atom   := NUMBER ["/" NUMBER] | GRAPH | "{" n; edges; labels "}" | "(" expr ")"
    GRAPH  := ("K" | "C" | "P" | "O") ["_"] INT ["@" INT ("," INT)*]

``*`` and ``^`` are the gluing product and power.  ``K2@1`` labels vertex
1 of K2 with label 1; ``@1,2`` labels vertices 1 and 2.
"""

from __future__ import annotations

import re
from collections import Counter
from fractions import Fraction

from .errors import ParseError
from .graphs import Multigraph, build_graph, standard_graph
from .quantum import K0, QuantumGraph, qg_power, qg_product

__all__ = ["parse_expr", "format_expr", "format_graph"]

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<graph>[KCPO]_?\d+(?:@\d+(?:,\d+)*)?)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<brace>\{[^{}]*\})
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            word = re.match(r"[A-Za-z_]\w*", text[pos:])
            if word:
                raise ParseError(f"unknown token {word.group()!r}", pos)
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            toks.append((kind, m.group(), pos))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


def _graph_token(tok: str, offset: int) -> Multigraph:
    base, _, labels = tok.partition("@")
    try:
        g = standard_graph(base)
    except ValueError as exc:
        raise ParseError(str(exc), offset) from None
    if not labels:
        return g
    names = [int(x) for x in labels.split(",")]
    if len(set(names)) != len(names):
        raise ParseError(f"duplicate label in {tok!r}", offset)
    if any(not 1 <= a <= g.vertex_count for a in names):
        raise ParseError(f"label out of range in {tok!r}", offset)
    return build_graph(g.vertex_count, g.edges, {a: a - 1 for a in names})


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def parse(self) -> QuantumGraph:
        g = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos)
        return g

    def expr(self) -> QuantumGraph:
        g = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            h = self.term()
            g = g + h if op == "+" else g - h
        return g

    def term(self) -> QuantumGraph:
        g = self.unary()
        while self.peek()[1] == "*":
            self.take()
            g = qg_product(g, self.unary())
        return g

    def unary(self) -> QuantumGraph:
        if self.peek()[1] == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> QuantumGraph:
        g = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, v, pos = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a positive integer, found {v or 'end of input'!r}", pos)
            if "." in v or self.peek()[1] == "/":
                raise ParseError("non-integer exponent", pos)
            k = int(v)
            if k < 1:
                raise ParseError("exponent must be a positive integer", pos)
            g = qg_power(g, k)
        return g

    def atom(self) -> QuantumGraph:
        kind, v, pos = self.take()
        if kind == "num":
            value = Fraction(v)
            if self.peek()[1] == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num":
                    raise ParseError("expected a denominator", p2)
                if Fraction(v2) == 0:
                    raise ParseError("zero denominator", p2)
                value /= Fraction(v2)
            return QuantumGraph.of(K0, value)
        if kind == "graph":
            return QuantumGraph.of(_graph_token(v, pos))
        if kind == "brace":
            try:
                return QuantumGraph.of(Multigraph.from_text(v[1:-1]))
            except ParseError as exc:
                raise ParseError(f"bad graph literal {v!r}", pos + 1 + exc.offset) from None
            except ValueError as exc:
                raise ParseError(f"bad graph literal {v!r}: {exc}", pos) from None
        if v == "(":
            g = self.expr()
            self.expect(")")
            return g
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)


def parse_expr(text: str) -> QuantumGraph:
    """Parse and evaluate an expression in the quantum-graph ring."""
    return _Parser(text).parse()


# -- printing --------------------------------------------------------------------------


def _name_component(c: Multigraph) -> str | None:
    n = c.vertex_count
    key = c.key
    candidates = [f"K{n}"]
    if n >= 4:
        candidates.append(f"C{n}")
    if n >= 3:
        candidates.append(f"P{n}")
    for tok in candidates:
        if standard_graph(tok).key == key:
            return tok
    return None


def format_graph(g: Multigraph) -> str:
    """Name a graph by standard tokens where possible, else a brace literal."""
    if g.is_labeled:
        return "{" + g.to_text() + "}"
    if g.vertex_count == 0:
        return "K0"
    parts: Counter = Counter()
    for comp in g.components():
        sub = g.induced(comp)
        name = _name_component(sub)
        if name is None:
            return "{" + g.to_text() + "}"
        parts[name] += 1
    out = []
    for name in sorted(parts, key=lambda s: (s[0], int(s[1:]))):
        k = parts[name]
        out.append(name if k == 1 else f"{name}^{k}")
    return "*".join(out)


def format_expr(g: QuantumGraph) -> str:
    """Inverse of :func:`parse_expr` up to isomorphism of constituents."""
    if not g:
        return "0"
    out = []
    for c, F in g.terms():
        body = format_graph(F)
        mag = abs(c)
        if body == "K0":
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        if not out:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append(("- " if c < 0 else "+ ") + text)
    return " ".join(out)
