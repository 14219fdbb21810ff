"""Quantum graphs: finite rational combinations of partially labeled multigraphs.

Multiplication is the gluing product: take the disjoint union and identify
vertices carrying the same label name.  The empty graph ``K0`` is the unit.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Union

from .graphs import Multigraph, build_graph, canonical_key

__all__ = [
    "QuantumGraph",
    "combine",
    "glue",
    "qg_add",
    "qg_scale",
    "qg_product",
    "qg_power",
    "unlabel",
    "K0",
]

Coefficient = Union[int, Fraction]


def glue(a: Multigraph, b: Multigraph) -> Multigraph:
    """Gluing product of two partially labeled multigraphs.

    Shared label names are identified; unshared labels persist.  Edge
    multisets are combined, so parallel edges may appear.
    """
    a_labels = a.label_map
    pos = {}
    nxt = a.vertex_count
    b_names = {v: x for x, v in b.labels}
    for v in range(b.vertex_count):
        name = b_names.get(v)
        if name is not None and name in a_labels:
            pos[v] = a_labels[name]
        else:
            pos[v] = nxt
            nxt += 1
    edges = list(a.edges) + [(pos[i], pos[j], m) for i, j, m in b.edges]
    labels = dict(a_labels)
    for x, v in b.labels:
        labels.setdefault(x, pos[v])
    return build_graph(nxt, edges, labels)


class QuantumGraph:
    """Immutable map canonical key -> (coefficient, representative graph)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict | None = None):
        self._terms: dict[tuple, tuple[Fraction, Multigraph]] = dict(terms or {})

    # -- construction helpers --------------------------------------------------

    @classmethod
    def of(cls, g: Multigraph, coeff: Coefficient = 1) -> "QuantumGraph":
        return combine([(coeff, g)])

    @classmethod
    def zero(cls) -> "QuantumGraph":
        return cls()

    @classmethod
    def one(cls) -> "QuantumGraph":
        return cls.of(K0)

    # -- views -----------------------------------------------------------------

    def terms(self) -> list[tuple[Fraction, Multigraph]]:
        """(coefficient, graph) pairs in canonical-key order."""
        return [self._terms[k] for k in sorted(self._terms)]

    def __iter__(self) -> Iterator[tuple[Fraction, Multigraph]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def keys(self) -> frozenset:
        return frozenset(self._terms)

    def coefficient(self, g: Multigraph) -> Fraction:
        entry = self._terms.get(canonical_key(g))
        return entry[0] if entry else Fraction(0)

    @property
    def is_labeled(self) -> bool:
        return any(g.is_labeled for _, g in self._terms.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuantumGraph):
            return NotImplemented
        return {k: c for k, (c, _) in self._terms.items()} == {
            k: c for k, (c, _) in other._terms.items()
        }

    def __hash__(self):
        return hash(frozenset((k, c) for k, (c, _) in self._terms.items()))

    def __repr__(self) -> str:
        from .parser import format_expr

        return f"QuantumGraph({format_expr(self)!r})"

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else qg_add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return qg_scale(-1, self)

    def __sub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else qg_add(self, qg_scale(-1, other))

    def __rsub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else qg_add(other, qg_scale(-1, self))

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return qg_scale(other, self)
        other = _coerce(other)
        return NotImplemented if other is None else qg_product(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return qg_power(self, k)


def _coerce(x) -> QuantumGraph | None:
    if isinstance(x, QuantumGraph):
        return x
    if isinstance(x, Multigraph):
        return QuantumGraph.of(x)
    if isinstance(x, (int, Rational)):
        return QuantumGraph.of(K0, x)
    return None


def combine(term_list: Iterable[tuple[Coefficient, Multigraph]]) -> QuantumGraph:
    """Merge isomorphic constituents and drop zero coefficients."""
    acc: dict[tuple, list] = {}
    for c, g in term_list:
        c = Fraction(c)
        k = canonical_key(g)
        if k in acc:
            acc[k][0] += c
        else:
            acc[k] = [c, g]
    return QuantumGraph({k: (c, g) for k, (c, g) in acc.items() if c != 0})


def qg_add(a: QuantumGraph, b: QuantumGraph) -> QuantumGraph:
    return combine(a.terms() + b.terms())


def qg_scale(c: Coefficient, a: QuantumGraph) -> QuantumGraph:
    c = Fraction(c)
    if c == 0:
        return QuantumGraph()
    return QuantumGraph({k: (c * x, g) for k, (x, g) in a._terms.items()})


def qg_product(a: QuantumGraph, b: QuantumGraph) -> QuantumGraph:
    return combine((x * y, glue(f, g)) for x, f in a.terms() for y, g in b.terms())


def qg_power(a: QuantumGraph, k: int) -> QuantumGraph:
    """``a`` glued with itself ``k`` times; ``k = 0`` gives the unit ``K0``."""
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"exponent must be a non-negative integer, got {k!r}")
    result = QuantumGraph.one()
    base = a
    while k:
        if k & 1:
            result = qg_product(result, base)
        k >>= 1
        if k:
            base = qg_product(base, base)
    return result


def unlabel(g: QuantumGraph) -> QuantumGraph:
    """Erase all labels and re-merge terms."""
    if not g.is_labeled:
        return g
    return combine((c, h.unlabeled()) for c, h in g.terms())


K0 = build_graph(0)
