"""Loop-free multigraphs with optional partial labels.

A :class:`Multigraph` is an immutable value.  Edges are stored as sorted
``(i, j, multiplicity)`` triples with ``i < j``; labels as sorted
``(name, vertex)`` pairs.  Isolated vertices are significant and never
dropped.
"""

from __future__ import annotations

import itertools
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import ParseError, SizeLimitError

__all__ = [
    "Multigraph",
    "build_graph",
    "standard_graph",
    "canonical_key",
    "enumerate_multigraphs",
    "skeleton",
    "disjoint_union",
    "MAX_CANONICAL_PERMUTATIONS",
]

# Largest number of vertex orderings tried per connected component.
MAX_CANONICAL_PERMUTATIONS = math.factorial(10)


@dataclass(frozen=True)
class Multigraph:
    vertex_count: int
    edges: tuple[tuple[int, int, int], ...] = ()
    labels: tuple[tuple[int, int], ...] = ()
    _key: tuple = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        n = self.vertex_count
        if not isinstance(n, int) or n < 0:
            raise ValueError(f"vertex_count must be a non-negative int, got {n!r}")
        seen = set()
        for i, j, m in self.edges:
            if i == j:
                raise ValueError(f"loop edge ({i},{i}) is not allowed")
            if not (0 <= i < j < n):
                raise ValueError(f"edge ({i},{j}) out of range for {n} vertices")
            if m < 1:
                raise ValueError(f"edge multiplicity must be positive, got {m}")
            if (i, j) in seen:
                raise ValueError(f"edge ({i},{j}) listed twice")
            seen.add((i, j))
        names = [a for a, _ in self.labels]
        verts = [v for _, v in self.labels]
        if len(set(names)) != len(names):
            raise ValueError("duplicate label name")
        if len(set(verts)) != len(verts):
            raise ValueError("a vertex carries two labels")
        for a, v in self.labels:
            if not isinstance(a, int) or a < 1:
                raise ValueError(f"label names must be positive ints, got {a!r}")
            if not 0 <= v < n:
                raise ValueError(f"labeled vertex {v} out of range")

    # -- basic views -------------------------------------------------------

    @property
    def edge_total(self) -> int:
        """Number of edges counted with multiplicity."""
        return sum(m for _, _, m in self.edges)

    @property
    def edge_list(self) -> list[tuple[int, int]]:
        """Edges expanded by multiplicity."""
        return [(i, j) for i, j, m in self.edges for _ in range(m)]

    @property
    def label_map(self) -> dict[int, int]:
        return dict(self.labels)

    @property
    def is_labeled(self) -> bool:
        return bool(self.labels)

    @property
    def is_simple(self) -> bool:
        return all(m == 1 for _, _, m in self.edges)

    def degree(self, v: int) -> int:
        return sum(m for i, j, m in self.edges if v in (i, j))

    def neighbors(self) -> list[dict[int, int]]:
        """Per-vertex map neighbor -> edge multiplicity."""
        adj: list[dict[int, int]] = [dict() for _ in range(self.vertex_count)]
        for i, j, m in self.edges:
            adj[i][j] = m
            adj[j][i] = m
        return adj

    def unlabeled(self) -> "Multigraph":
        return Multigraph(self.vertex_count, self.edges) if self.labels else self

    def permuted(self, perm: list[int]) -> "Multigraph":
        """Renumber vertex ``v`` as ``perm[v]``."""
        return build_graph(
            self.vertex_count,
            [(perm[i], perm[j], m) for i, j, m in self.edges],
            {a: perm[v] for a, v in self.labels},
        )

    def components(self) -> list[list[int]]:
        parent = list(range(self.vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j, _ in self.edges:
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
        groups: dict[int, list[int]] = {}
        for v in range(self.vertex_count):
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def induced(self, vertices: list[int]) -> "Multigraph":
        """Subgraph on ``vertices``, renumbered in the given order."""
        pos = {v: k for k, v in enumerate(vertices)}
        edges = [(pos[i], pos[j], m) for i, j, m in self.edges if i in pos and j in pos]
        labels = {a: pos[v] for a, v in self.labels if v in pos}
        return build_graph(len(vertices), edges, labels)

    @property
    def key(self) -> tuple:
        return canonical_key(self)

    # -- text form -----------------------------------------------------------

    def to_text(self) -> str:
        """Serialize as ``n; i-j[*m],...; label:vertex,...``."""
        edges = ",".join(f"{i}-{j}" + (f"*{m}" if m > 1 else "") for i, j, m in self.edges)
        labels = ",".join(f"{a}:{v}" for a, v in self.labels)
        return f"{self.vertex_count}; {edges}; {labels}"

    @classmethod
    def from_text(cls, text: str) -> "Multigraph":
        parts = text.split(";")
        if len(parts) == 1:
            parts += ["", ""]
        elif len(parts) == 2:
            parts.append("")
        if len(parts) != 3:
            raise ParseError("expected 'n; edges; labels'", 0)
        try:
            n = int(parts[0].strip())
        except ValueError:
            raise ParseError(f"bad vertex count {parts[0].strip()!r}", 0) from None
        offset = len(parts[0]) + 1
        edges = []
        for item in filter(None, (s.strip() for s in parts[1].split(","))):
            m = re.fullmatch(r"(\d+)\s*-\s*(\d+)(?:\s*\*\s*(\d+))?", item)
            if not m:
                raise ParseError(f"bad edge {item!r}", offset + parts[1].find(item))
            edges.append((int(m[1]), int(m[2]), int(m[3] or 1)))
        offset += len(parts[1]) + 1
        labels = {}
        for item in filter(None, (s.strip() for s in parts[2].split(","))):
            m = re.fullmatch(r"(\d+)\s*:\s*(\d+)", item)
            if not m:
                raise ParseError(f"bad label {item!r}", offset + parts[2].find(item))
            if int(m[1]) in labels:
                raise ValueError(f"duplicate label name {m[1]}")
            labels[int(m[1])] = int(m[2])
        return build_graph(n, edges, labels)

    def __str__(self) -> str:
        return f"Multigraph({self.to_text()})"


def build_graph(
    vertex_count: int,
    edges: Iterable = (),
    labels: Mapping[int, int] | Iterable[tuple[int, int]] | None = None,
) -> Multigraph:
    """Validate and normalize a multigraph.

    ``edges`` holds pairs ``(i, j)`` (repeats add multiplicity) or triples
    ``(i, j, m)``.  ``labels`` maps label name to vertex.
    """
    counts: Counter = Counter()
    for e in edges:
        if len(e) == 2:
            i, j, m = e[0], e[1], 1
        else:
            i, j, m = e
        if i == j:
            raise ValueError(f"loop edge ({i},{j}) is not allowed")
        for v in (i, j):
            if not 0 <= v < vertex_count:
                raise ValueError(f"edge endpoint {v} out of range for {vertex_count} vertices")
        counts[(min(i, j), max(i, j))] += m
    if labels is None:
        label_items = []
    elif isinstance(labels, Mapping):
        label_items = list(labels.items())
    else:
        label_items = list(labels)
    names = [a for a, _ in label_items]
    if len(set(names)) != len(names):
        raise ValueError("duplicate label name")
    return Multigraph(
        vertex_count,
        tuple(sorted((i, j, m) for (i, j), m in counts.items() if m)),
        tuple(sorted(label_items)),
    )


_TOKEN = re.compile(r"([KCPO])_?(\d+)")


def standard_graph(token: str) -> Multigraph:
    """``Kn`` complete, ``Cn`` cycle, ``Pn`` path on n vertices, ``On`` labeled unit."""
    m = _TOKEN.fullmatch(token.strip())
    if not m:
        raise ValueError(f"unknown graph token {token!r}")
    family, n = m[1], int(m[2])
    if family == "K":
        return build_graph(n, itertools.combinations(range(n), 2))
    if family == "C":
        if n < 3:
            raise ValueError(f"cycle needs at least 3 vertices, got {token!r}")
        return build_graph(n, [(i, (i + 1) % n) for i in range(n)])
    if family == "P":
        return build_graph(n, [(i, i + 1) for i in range(n - 1)])
    return build_graph(n, (), {a: a - 1 for a in range(1, n + 1)})


def disjoint_union(a: Multigraph, b: Multigraph) -> Multigraph:
    """Place ``b`` after ``a``; label names must not clash."""
    shift = a.vertex_count
    if set(a.label_map) & set(b.label_map):
        raise ValueError("disjoint union of graphs sharing a label name; use glue")
    return build_graph(
        a.vertex_count + b.vertex_count,
        list(a.edges) + [(i + shift, j + shift, m) for i, j, m in b.edges],
        {**a.label_map, **{x: v + shift for x, v in b.labels}},
    )


def skeleton(g: Multigraph) -> Multigraph:
    """Clamp every edge multiplicity to 1."""
    if g.is_simple:
        return g
    return Multigraph(g.vertex_count, tuple((i, j, 1) for i, j, _ in g.edges), g.labels)


# -- canonical form -------------------------------------------------------------


def _refine_colors(g: Multigraph, verts: list[int], adj) -> dict[int, int]:
    names = {v: a for a, v in g.labels}
    color = {v: (1, names[v]) if v in names else (0, 0) for v in verts}
    ncolors = -1
    while True:
        sigs = {
            v: (color[v], tuple(sorted((color[u], m) for u, m in adj[v].items())))
            for v in verts
        }
        ranks = {s: k for k, s in enumerate(sorted(set(sigs.values())))}
        color = {v: (ranks[sigs[v]],) for v in verts}
        if len(ranks) == ncolors:
            return {v: c[0] for v, c in color.items()}
        ncolors = len(ranks)


def _component_key(g: Multigraph, verts: list[int], adj) -> tuple:
    names = {v: a for a, v in g.labels}
    labeled = sorted((v for v in verts if v in names), key=names.__getitem__)
    colors = _refine_colors(g, verts, adj)
    cells: dict[int, list[int]] = {}
    for v in verts:
        if v not in names:
            cells.setdefault(colors[v], []).append(v)
    cell_list = [cells[c] for c in sorted(cells)]
    count = 1
    for cell in cell_list:
        count *= math.factorial(len(cell))
    if count > MAX_CANONICAL_PERMUTATIONS:
        raise SizeLimitError(
            f"component with {len(verts)} vertices is too large for canonicalization"
        )
    edges = [(v, u, m) for v in verts for u, m in adj[v].items() if v < u]
    best = None
    for choice in itertools.product(*(itertools.permutations(c) for c in cell_list)):
        order = labeled + [v for part in choice for v in part]
        pos = {v: k for k, v in enumerate(order)}
        enc = tuple(sorted(
            (min(pos[i], pos[j]), max(pos[i], pos[j]), m) for i, j, m in edges
        ))
        if best is None or enc < best:
            best = enc
    return (len(verts), tuple(names[v] for v in labeled), best)


def canonical_key(g: Multigraph) -> tuple:
    """Key equal for two graphs iff they are isomorphic fixing every label name.

    Components are canonicalized independently by exhaustive search over
    vertex orderings compatible with a color refinement; the graph key is
    the sorted tuple of component keys.
    """
    if g._key is not None:
        return g._key
    adj = g.neighbors()
    comps = tuple(sorted(_component_key(g, c, adj) for c in g.components()))
    key = (g.vertex_count, comps)
    object.__setattr__(g, "_key", key)
    return key


def enumerate_multigraphs(max_vertices: int, max_edge_total: int) -> list[Multigraph]:
    """One representative per isomorphism class of unlabeled loop-free multigraphs.

    Covers every vertex count ``0..max_vertices`` and every edge total
    ``0..max_edge_total``; ordered by (vertices, edges, canonical key).
    """
    if max_vertices < 0 or max_edge_total < 0:
        raise ValueError("bounds must be non-negative")
    found: dict[tuple, Multigraph] = {}
    for n in range(max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for total in range(max_edge_total + 1):
            if total and not pairs:
                break
            for chosen in itertools.combinations_with_replacement(range(len(pairs)), total):
                g = build_graph(n, [pairs[k] for k in chosen])
                found.setdefault(g.key, g)
    return sorted(found.values(), key=lambda g: (g.vertex_count, g.edge_total, g.key))
