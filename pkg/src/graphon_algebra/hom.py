"""Weighted homomorphism numbers and homomorphism polynomials."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import SizeLimitError
from .graphs import Multigraph
from .polynomial import SymPolynomial, var_index
from .quantum import QuantumGraph

__all__ = [
    "WeightedTarget",
    "hom_count",
    "hom_count_brute",
    "hom_count_dp",
    "hom_poly",
    "elimination_order",
    "MAX_MAPS",
    "MAX_TABLE",
]

# Largest q**|V| enumerated by brute force.
MAX_MAPS = 5_000_000
# Largest intermediate table built by vertex elimination.
MAX_TABLE = 1_000_000


@dataclass(frozen=True)
class WeightedTarget:
    """Target graph on [q] with node weights and a symmetric edge-weight matrix.

    The diagonal is allowed: target loops carry weights even though source
    graphs have none.
    """

    node_weights: tuple[Fraction, ...]
    edge_weights: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        nw = tuple(Fraction(x) for x in self.node_weights)
        ew = tuple(tuple(Fraction(x) for x in row) for row in self.edge_weights)
        q = len(nw)
        if len(ew) != q or any(len(r) != q for r in ew):
            raise ValueError("edge weights must be a q x q matrix matching node weights")
        for i in range(q):
            for j in range(i):
                if ew[i][j] != ew[j][i]:
                    raise ValueError(f"edge weights not symmetric at ({i},{j})")
        object.__setattr__(self, "node_weights", nw)
        object.__setattr__(self, "edge_weights", ew)

    @classmethod
    def from_matrix(cls, M: Sequence[Sequence], node_weights: Sequence | None = None):
        q = len(M)
        return cls(tuple(node_weights) if node_weights is not None else (1,) * q, tuple(map(tuple, M)))

    @property
    def q(self) -> int:
        return len(self.node_weights)


def hom_count_brute(F: Multigraph, H: WeightedTarget, max_maps: int = MAX_MAPS) -> Fraction:
    """Sum over all q**|V| vertex maps; the reference route."""
    q, n = H.q, F.vertex_count
    if q**n > max_maps:
        raise SizeLimitError(f"instance too large: {q}^{n} maps exceeds {max_maps}")
    # Clear denominators so the inner loop runs on Python ints.
    dn = math.lcm(*(w.denominator for w in H.node_weights))
    de = math.lcm(*(w.denominator for row in H.edge_weights for w in row))
    nw = [int(w * dn) for w in H.node_weights]
    ew = [[int(w * de) for w in row] for row in H.edge_weights]
    powers = {m: [[w**m for w in row] for row in ew] for _, _, m in F.edges}
    total = 0
    for phi in itertools.product(range(q), repeat=n):
        w = 1
        for v in phi:
            w *= nw[v]
        for i, j, m in F.edges:
            if not w:
                break
            w *= powers[m][phi[i]][phi[j]]
        total += w
    return Fraction(total, dn**n * de**F.edge_total)


def elimination_order(F: Multigraph) -> list[int]:
    """Greedy minimum-degree elimination order (ties by vertex index)."""
    adj = {v: set() for v in range(F.vertex_count)}
    for i, j, _ in F.edges:
        adj[i].add(j)
        adj[j].add(i)
    order = []
    while adj:
        v = min(adj, key=lambda u: (len(adj[u]), u))
        nbrs = adj.pop(v)
        for a in nbrs:
            adj[a].discard(v)
            adj[a] |= nbrs - {a}
        order.append(v)
    return order


def hom_count_dp(F: Multigraph, H: WeightedTarget, max_table: int = MAX_TABLE) -> Fraction:
    """Vertex-elimination dynamic program over factor tables."""
    q = H.q
    nw, ew = H.node_weights, H.edge_weights
    factors: list[tuple[tuple[int, ...], dict]] = []
    for v in range(F.vertex_count):
        factors.append(((v,), {(a,): nw[a] for a in range(q)}))
    for i, j, m in F.edges:
        factors.append(((i, j), {(a, b): ew[a][b] ** m for a in range(q) for b in range(q)}))
    result = Fraction(1)
    for v in elimination_order(F):
        touching = [f for f in factors if v in f[0]]
        factors = [f for f in factors if v not in f[0]]
        scope = sorted({u for s, _ in touching for u in s})
        if q ** len(scope) > max_table:
            raise SizeLimitError(
                f"instance too large: elimination table of {q}^{len(scope)} entries"
            )
        rest = tuple(u for u in scope if u != v)
        vpos = scope.index(v)
        table: dict = {}
        for assign in itertools.product(range(q), repeat=len(scope)):
            loc = dict(zip(scope, assign))
            w = Fraction(1)
            for s, t in touching:
                w *= t[tuple(loc[u] for u in s)]
                if not w:
                    break
            if w:
                k = assign[:vpos] + assign[vpos + 1:]
                table[k] = table.get(k, 0) + w
        if rest:
            full = {k: table.get(k, Fraction(0)) for k in itertools.product(range(q), repeat=len(rest))}
            factors.append((rest, full))
        else:
            result *= table.get((), Fraction(0))
    for _, t in factors:
        result *= t[()]
    return result


def hom_count(F: Multigraph, H: WeightedTarget, method: str = "dp") -> Fraction:
    """Weighted homomorphism number; edge multiplicity m contributes weight**m.

    Labels on ``F`` are ignored.
    """
    if method == "dp":
        return hom_count_dp(F, H)
    if method == "brute":
        return hom_count_brute(F, H)
    raise ValueError(f"unknown method {method!r}")


def _component_poly(F: Multigraph, verts: list[int], q: int) -> dict:
    if q ** len(verts) > MAX_MAPS:
        raise SizeLimitError(f"instance too large: {q}^{len(verts)} maps exceeds {MAX_MAPS}")
    pos = {v: k for k, v in enumerate(verts)}
    edges = [(pos[i], pos[j], m) for i, j, m in F.edges if i in pos]
    nvar = q * (q + 1) // 2
    idx = [[var_index(q, a, b) for b in range(q)] for a in range(q)]
    out: dict = {}
    for phi in itertools.product(range(q), repeat=len(verts)):
        e = [0] * nvar
        for i, j, m in edges:
            e[idx[phi[i]][phi[j]]] += m
        t = tuple(e)
        out[t] = out.get(t, 0) + 1
    return out


def _graph_poly(F: Multigraph, q: int) -> SymPolynomial:
    result = SymPolynomial.constant(q, 1)
    cache: dict = {}
    isolated = 0
    for comp in F.components():
        if len(comp) == 1:
            isolated += 1
            continue
        sub = F.induced(comp).unlabeled()
        k = sub.key
        if k not in cache:
            cache[k] = SymPolynomial(q, _component_poly(sub, list(range(sub.vertex_count)), q))
        result = result * cache[k]
    return result * q**isolated


def hom_poly(g: Union[QuantumGraph, Multigraph], q: int) -> SymPolynomial:
    """Homomorphism polynomial of an unlabeled quantum graph at target size q.

    Each constituent contributes its symbolic count
    ``sum_phi prod_{ij in E} x_{phi(i) phi(j)}`` with unit node weights.
    """
    if q < 1:
        raise ValueError("q must be at least 1")
    if isinstance(g, Multigraph):
        g = QuantumGraph.of(g)
    if g.is_labeled:
        raise ValueError("hom_poly needs an unlabeled quantum graph; call unlabel() first")
    out = SymPolynomial(q)
    for c, F in g.terms():
        out = out + _graph_poly(F, q) * c
    return out
