"""Exact polynomials over Q in the symmetric matrix variables x_ij, i <= j.

Variables are indexed row-major over the upper triangle:
``x11, x12, ..., x1q, x22, ..., xqq``.  Exponent vectors use that order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .errors import ParseError, SizeLimitError

__all__ = [
    "SymPolynomial",
    "var_pairs",
    "var_index",
    "poly_add",
    "poly_mul",
    "poly_neg",
    "permute_vars",
    "is_sq_invariant",
    "poly_eval",
    "parse_polynomial",
    "monomial_key",
]

MAX_INVARIANCE_Q = 5


@lru_cache(maxsize=None)
def var_pairs(q: int) -> tuple[tuple[int, int], ...]:
    """0-based index pairs (i, j), i <= j, in variable order."""
    return tuple((i, j) for i in range(q) for j in range(i, q))


@lru_cache(maxsize=None)
def _index_table(q: int) -> dict[tuple[int, int], int]:
    return {p: k for k, p in enumerate(var_pairs(q))}


def var_index(q: int, i: int, j: int) -> int:
    """Position of x_ij (0-based i, j, any order) in the exponent vector."""
    return _index_table(q)[(min(i, j), max(i, j))]


def monomial_key(order: str):
    """Sort key under which larger monomials compare greater."""
    if order == "grevlex":
        return lambda e: (sum(e), tuple(-x for x in reversed(e)))
    if order == "grlex":
        return lambda e: (sum(e), e)
    if order == "lex":
        return lambda e: e
    raise ValueError(f"unknown monomial order {order!r}")



class SymPolynomial:
    """Sparse polynomial in the C(q,2)+q variables of a symmetric q x q matrix."""

    __slots__ = ("q", "_terms")

    def __init__(self, q: int, terms: Mapping[tuple[int, ...], object] | None = None):
        if q < 1:
            raise ValueError("q must be at least 1")
        self.q = q
        n = q * (q + 1) // 2
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != n:
                raise ValueError(f"exponent vector {e} has wrong length for q={q}")
            c = Fraction(c)
            if c:
                clean[e] = c
        self._terms: dict[tuple[int, ...], Fraction] = clean

    @classmethod
    def constant(cls, q: int, c) -> "SymPolynomial":
        return cls(q, {(0,) * (q * (q + 1) // 2): c})

    @classmethod
    def variable(cls, q: int, i: int, j: int) -> "SymPolynomial":
        """x_ij with 1-based indices."""
        if not (1 <= i <= q and 1 <= j <= q):
            raise ValueError(f"x{i}{j} is not a variable for q={q}")
        e = [0] * (q * (q + 1) // 2)
        e[var_index(q, i - 1, j - 1)] = 1
        return cls(q, {tuple(e): 1})

    @property
    def nvars(self) -> int:
        return self.q * (self.q + 1) // 2

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def sorted_terms(self, order: str = "grevlex") -> list[tuple[tuple[int, ...], Fraction]]:
        key = monomial_key(order)
        return sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)

    # -- ring operations ------------------------------------------------------------

    def _check(self, other: "SymPolynomial"):
        if other.q != self.q:
            raise ValueError(f"mismatched q: {self.q} vs {other.q}")

    def __add__(self, other):
        if not isinstance(other, SymPolynomial):
            other = SymPolynomial.constant(self.q, other)
        return poly_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return poly_neg(self)

    def __sub__(self, other):
        if not isinstance(other, SymPolynomial):
            other = SymPolynomial.constant(self.q, other)
        return poly_add(self, poly_neg(other))

    def __rsub__(self, other):
        return SymPolynomial.constant(self.q, other) - self

    def __mul__(self, other):
        if not isinstance(other, SymPolynomial):
            c = Fraction(other)
            return SymPolynomial(self.q, {e: c * v for e, v in self._terms.items()})
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = SymPolynomial.constant(self.q, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, SymPolynomial):
            return self.q == other.q and self._terms == other._terms
        try:
            c = Fraction(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self._terms == SymPolynomial.constant(self.q, c)._terms

    def __hash__(self):
        return hash((self.q, frozenset(self._terms.items())))

    # -- text --------------------------------------------------------------------

    def _var_name(self, k: int) -> str:
        i, j = var_pairs(self.q)[k]
        if self.q < 10:
            return f"x{i + 1}{j + 1}"
        return f"x{i + 1}_{j + 1}"

    def __str__(self) -> str:
        """Compact display such as ``x11 + 2 x12 + x22``."""
        if not self._terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = " ".join(
                self._var_name(k) + (f"^{x}" if x > 1 else "") for k, x in enumerate(e) if x
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag} {mono}"
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append(("- " if c < 0 else "+ ") + body)
        return " ".join(out)

    def __repr__(self) -> str:
        return f"SymPolynomial(q={self.q}, {self})"

    def to_text(self) -> str:
        """Bracketed form ``c * x[i][j]^e * ...`` joined by ``+``/``-``."""
        if not self._terms:
            return "0"
        parts = []
        pairs = var_pairs(self.q)
        for e, c in self.sorted_terms():
            factors = [str(abs(c))] + [
                f"x[{pairs[k][0] + 1}][{pairs[k][1] + 1}]^{x}" for k, x in enumerate(e) if x
            ]
            sign = "-" if c < 0 else "+"
            parts.append((sign, " * ".join(factors)))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return " ".join([head] + [f"{s} {t}" for s, t in parts[1:]])


def poly_add(p: SymPolynomial, r: SymPolynomial) -> SymPolynomial:
    p._check(r)
    out = dict(p._terms)
    for e, c in r._terms.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return SymPolynomial(p.q, out)


def poly_neg(p: SymPolynomial) -> SymPolynomial:
    return SymPolynomial(p.q, {e: -c for e, c in p._terms.items()})


def poly_mul(p: SymPolynomial, r: SymPolynomial) -> SymPolynomial:
    p._check(r)
    out: dict = {}
    for e1, c1 in p._terms.items():
        for e2, c2 in r._terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return SymPolynomial(p.q, out)


def permute_vars(p: SymPolynomial, sigma: Sequence[int]) -> SymPolynomial:
    """Substitute x_ij -> x_{sigma(i) sigma(j)}; ``sigma`` is a 0-based permutation."""
    q = p.q
    if sorted(sigma) != list(range(q)):
        raise ValueError(f"{list(sigma)} is not a permutation of range({q})")
    pairs = var_pairs(q)
    target = [var_index(q, sigma[i], sigma[j]) for i, j in pairs]
    out = {}
    for e, c in p._terms.items():
        ne = [0] * len(e)
        for k, x in enumerate(e):
            if x:
                ne[target[k]] += x
        out[tuple(ne)] = c
    return SymPolynomial(q, out)


def is_sq_invariant(p: SymPolynomial) -> bool:
    """True iff ``p`` is fixed by every permutation of the q matrix indices."""
    if p.q > MAX_INVARIANCE_Q:
        raise SizeLimitError(f"q={p.q} is too large for an exhaustive S_q check")
    if p.q == 1:
        return True
    # Transpositions (0 k) generate S_q.
    return all(
        permute_vars(p, [k if v == 0 else 0 if v == k else v for v in range(p.q)]) == p
        for k in range(1, p.q)
    )


def poly_eval(p: SymPolynomial, M) -> Fraction:
    """Exact value of ``p`` at the symmetric matrix ``M``."""
    q = p.q
    if len(M) != q or any(len(row) != q for row in M):
        raise ValueError(f"matrix must be {q}x{q}")
    vals = []
    for i, j in var_pairs(q):
        a, b = Fraction(M[i][j]), Fraction(M[j][i])
        if a != b:
            raise ValueError(f"matrix is not symmetric at ({i},{j})")
        vals.append(a)
    total = Fraction(0)
    for e, c in p._terms.items():
        term = c
        for v, x in zip(vals, e):
            if x:
                term *= v**x
        total += term
    return total


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")
_FACTOR_RE = re.compile(r"x\[(\d+)\]\[(\d+)\](?:\^(\d+))?|(\d+(?:/\d+)?)")


def parse_polynomial(text: str, q: int) -> SymPolynomial:
    """Parse the bracketed text form produced by :meth:`SymPolynomial.to_text`."""
    s = text.strip()
    if s == "0":
        return SymPolynomial(q)
    out = SymPolynomial(q)
    pos = 0
    n = q * (q + 1) // 2
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or not m.group(2).strip():
            raise ParseError("expected a term", pos)
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(sign)
        e = [0] * n
        body = m.group(2)
        for raw in body.split("*"):
            tok = raw.strip()
            f = _FACTOR_RE.fullmatch(tok)
            if not f:
                raise ParseError(f"bad factor {tok!r}", m.start(2) + body.find(raw))
            if f.group(4):
                coeff *= Fraction(f.group(4))
            else:
                i, j = int(f.group(1)), int(f.group(2))
                if not (1 <= i <= q and 1 <= j <= q):
                    raise ParseError(f"variable index out of range in {tok!r}", m.start(2))
                e[var_index(q, i - 1, j - 1)] += int(f.group(3) or 1)
        out = out + SymPolynomial(q, {tuple(e): coeff})
        pos = m.end()
    return out
