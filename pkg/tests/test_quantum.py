import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from graphon_algebra import K0, QuantumGraph, build_graph, combine, glue, qg_power, qg_product, standard_graph, unlabel
from graphon_algebra.quantum import qg_add, qg_scale

from helpers import quantum_graphs, random_quantum

K2, K3, C4, P3 = (standard_graph(t) for t in ("K2", "K3", "C4", "P3"))


def test_combine_merges_isomorphic():
    g = combine([(1, K3), (1, K3)])
    assert len(g) == 1 and g.coefficient(K3) == 2


def test_combine_cancels():
    relabeled = build_graph(3, [(2, 0), (1, 2), (0, 1)])
    assert not combine([(1, K3), (-1, relabeled)])


def test_combine_prop_example():
    k2_3 = qg_power(QuantumGraph.of(K2), 3).terms()[0][1]
    g = combine([(Fraction(1, 2), k2_3), (-1, C4)])
    assert g.coefficient(k2_3) == Fraction(1, 2)
    assert g.coefficient(C4) == -1
    assert k2_3.vertex_count == 6 and k2_3.edge_total == 3


def test_glue_shared_label_makes_path():
    k2dot = build_graph(2, [(0, 1)], {1: 0})
    path = glue(k2dot, k2dot)
    assert path.vertex_count == 3 and path.edge_total == 2
    assert path.label_map == {1: path.label_map[1]}
    assert path.degree(path.label_map[1]) == 2
    assert path.unlabeled().key == P3.key


def test_glue_unlabeled_is_disjoint_union():
    g = glue(K2, K2)
    assert g.vertex_count == 4 and g.edge_total == 2
    assert len(g.components()) == 2


def test_glue_unit():
    o1 = standard_graph("O1")
    g = build_graph(3, [(0, 1), (1, 2)], {1: 1})
    assert glue(o1, g).key == g.key
    assert glue(K0, g).key == g.key


def test_glue_creates_multi_edges():
    a = build_graph(2, [(0, 1)], {1: 0, 2: 1})
    g = glue(a, a)
    assert g.vertex_count == 2 and g.edges == ((0, 1, 2),)


def test_power_of_k2():
    g = qg_power(QuantumGraph.of(K2), 4)
    [(c, F)] = g.terms()
    assert c == 1 and F.vertex_count == 8 and F.edge_total == 4 and len(F.components()) == 4


def test_power_example_three_terms():
    k2_4 = qg_power(QuantumGraph.of(K2), 4).terms()[0][1]
    g = combine([(1, k2_4), (-1, C4)])
    sq = qg_power(g, 2)
    assert sorted(c for c, _ in sq.terms()) == [-2, 1, 1]


def test_power_zero_is_unit():
    assert qg_power(QuantumGraph.of(K3), 0) == QuantumGraph.one()


def test_unlabel():
    k2dot = QuantumGraph.of(build_graph(2, [(0, 1)], {1: 0}))
    assert unlabel(k2dot) == QuantumGraph.of(K2)
    path = qg_product(k2dot, k2dot)
    assert unlabel(path) == QuantumGraph.of(P3)
    assert unlabel(QuantumGraph.zero()) == QuantumGraph.zero()


def test_unlabel_remerges_terms():
    a = build_graph(2, [(0, 1)], {1: 0})
    g = combine([(1, a), (2, K2)])
    assert len(g) == 2
    assert unlabel(g) == QuantumGraph.of(K2, 3)


def test_operator_coercion():
    g = QuantumGraph.of(K2)
    assert g + 1 == combine([(1, K2), (1, K0)])
    assert 2 * g == qg_scale(2, g)
    assert g * K3 == qg_product(g, QuantumGraph.of(K3))
    assert 1 - g == combine([(1, K0), (-1, K2)])
    assert g ** 2 == qg_power(g, 2)


def test_scale_by_zero_drops_everything():
    assert not qg_scale(0, QuantumGraph.of(K3))


def _triples(n=120):
    rng = random.Random(11)
    for _ in range(n):
        yield tuple(random_quantum(rng, max_vertices=3, max_edges=3, labels=True) for _ in range(3))


@pytest.mark.parametrize("a,b,c", list(_triples()))
def test_ring_laws(a, b, c):
    assert qg_product(qg_add(a, b), c) == qg_add(qg_product(a, c), qg_product(b, c))
    assert qg_product(qg_product(a, b), c) == qg_product(a, qg_product(b, c))
    assert qg_product(a, b) == qg_product(b, a)
    assert qg_add(a, b) == qg_add(b, a)
    assert qg_product(a, QuantumGraph.one()) == a


@settings(max_examples=80, deadline=None)
@given(quantum_graphs(labeled=True))
def test_no_zero_coefficients(g):
    assert all(c != 0 for c, _ in g.terms())
    assert all(F.key == k for k, (_, F) in g._terms.items())
    assert g - g == QuantumGraph.zero()
