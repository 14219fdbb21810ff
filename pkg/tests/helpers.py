"""Random instance generators and brute-force oracles shared by the tests."""

import itertools
import random
from fractions import Fraction

from hypothesis import strategies as st

from graphon_algebra import QuantumGraph, build_graph, combine, step_kernel
from graphon_algebra.kernels import spectral_kernel


def brute_isomorphic(g, h):
    """Exhaustive label-respecting isomorphism search, independent of canonical keys."""
    if g.vertex_count != h.vertex_count or g.edge_total != h.edge_total:
        return False
    if sorted(a for a, _ in g.labels) != sorted(a for a, _ in h.labels):
        return False
    ge = {(i, j): m for i, j, m in g.edges}
    he = {(i, j): m for i, j, m in h.edges}
    gl, hl = g.label_map, h.label_map
    for perm in itertools.permutations(range(g.vertex_count)):
        if any(perm[gl[a]] != hl[a] for a in gl):
            continue
        if all(he.get((min(perm[i], perm[j]), max(perm[i], perm[j]))) == m for (i, j), m in ge.items()):
            return True
    return False


def random_graph(rng: random.Random, max_vertices=4, max_edges=4, labels=False):
    n = rng.randint(0, max_vertices)
    edges = []
    if n >= 2:
        for _ in range(rng.randint(0, max_edges)):
            i, j = rng.sample(range(n), 2)
            edges.append((i, j))
    lab = {}
    if labels and n:
        names = rng.sample(range(1, 4), rng.randint(0, min(n, 3)))
        verts = rng.sample(range(n), len(names))
        lab = dict(zip(names, verts))
    return build_graph(n, edges, lab)


def random_quantum(rng: random.Random, terms=3, **kw):
    return combine(
        (Fraction(rng.randint(-4, 4), rng.randint(1, 3)), random_graph(rng, **kw))
        for _ in range(rng.randint(1, terms))
    )


def random_fraction(rng, lo=-3, hi=3, den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_steps(rng, n):
    w = [rng.randint(1, 4) for _ in range(n)]
    return [Fraction(x, sum(w)) for x in w]


def random_step_kernel(rng: random.Random, max_steps=4, graphon=False, uniform=False):
    n = rng.randint(1, max_steps)
    P = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            if graphon:
                v = Fraction(rng.randint(0, 4), 4)
            else:
                v = random_fraction(rng)
            P[a][b] = P[b][a] = v
    return step_kernel(P, None if uniform else random_steps(rng, n))


def random_spectral_kernel(rng: random.Random, max_rank=3, max_cells=4):
    cells = rng.randint(1, max_cells)
    r = rng.randint(0, max_rank)
    return spectral_kernel(
        [random_fraction(rng) for _ in range(r)],
        [[random_fraction(rng) for _ in range(cells)] for _ in range(r)],
        random_steps(rng, cells),
    )


@st.composite
def multigraphs(draw, max_vertices=4, max_edges=4, labeled=False):
    n = draw(st.integers(0, max_vertices))
    edges = []
    if n >= 2:
        pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
        edges = draw(st.lists(pair, max_size=max_edges))
    labels = {}
    if labeled and n:
        verts = draw(st.lists(st.integers(0, n - 1), unique=True, max_size=min(n, 3)))
        labels = {k + 1: v for k, v in enumerate(verts)}
    return build_graph(n, edges, labels)


@st.composite
def quantum_graphs(draw, max_terms=3, **kw):
    coeff = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    terms = draw(st.lists(st.tuples(coeff, multigraphs(**kw)), min_size=0, max_size=max_terms))
    return combine(terms)


def unit():
    return QuantumGraph.one()


def simple_graphs(max_vertices):
    """One representative per isomorphism class of simple graphs, by brute force."""
    seen = {}
    for n in range(max_vertices + 1):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = build_graph(n, [p for k, p in enumerate(pairs) if mask >> k & 1])
            seen.setdefault(g.key, g)
    return list(seen.values())
