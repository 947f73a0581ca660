import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from degseq_lab.degree_core import make_sequence
from degseq_lab.errors import DegreeMismatch, InvalidConstraint, InvalidGraph
from degseq_lab.graph_core import (
    ConstraintPair,
    LabeledGraph,
    Multigraph,
    boundary,
    components,
    count_isolated_edges,
    count_isolated_triangles,
    edges_between,
    is_connected,
    parse_edge_list,
    subgraph_degrees,
)

TRIANGLE = LabeledGraph(3, ((0, 1), (0, 2), (1, 2)))


def test_subgraph_degrees_examples():
    assert subgraph_degrees(LabeledGraph(4, ((0, 1), (0, 2)))) == [2, 1, 1, 0]
    assert subgraph_degrees(LabeledGraph(4)) == [0, 0, 0, 0]
    assert subgraph_degrees(TRIANGLE) == [2, 2, 2]


def test_boundary_examples():
    assert boundary(LabeledGraph(4, ((0, 1), (2, 3)))) == {0, 1, 2, 3}
    assert boundary(LabeledGraph(4)) == frozenset()
    assert boundary(LabeledGraph(4, ((0, 1), (0, 2)))) == {0, 1, 2}


def test_components_examples():
    path = LabeledGraph(3, ((0, 1), (1, 2)))
    assert components(path) == [frozenset({0, 1, 2})] and is_connected(path)
    g = LabeledGraph(3, ((0, 1),))
    assert components(g) == [frozenset({0, 1}), frozenset({2})]
    assert not is_connected(g)
    assert is_connected(LabeledGraph(1))


def test_isolated_counts_examples():
    d = make_sequence([1, 1, 1, 1])
    G = LabeledGraph(4, ((0, 1), (2, 3)))
    assert (count_isolated_edges(G, d), count_isolated_triangles(G, d)) == (2, 0)
    d3 = make_sequence([2, 2, 2])
    assert (count_isolated_edges(TRIANGLE, d3), count_isolated_triangles(TRIANGLE, d3)) == (0, 1)
    d4 = make_sequence([2, 2, 1, 1])
    G4 = LabeledGraph(4, ((0, 2), (0, 1), (1, 3)))
    assert (count_isolated_edges(G4, d4), count_isolated_triangles(G4, d4)) == (0, 0)
    with pytest.raises(DegreeMismatch):
        count_isolated_edges(TRIANGLE, d)


def test_edges_between_examples():
    G = LabeledGraph(4, ((0, 1), (2, 3)))
    assert edges_between(G, {0}, {1}) == 1
    assert edges_between(TRIANGLE, {0, 1, 2}, {0, 1, 2}) == 3
    assert edges_between(G, {0}, {2}) == 0


def test_graph_validation():
    with pytest.raises(InvalidGraph):
        LabeledGraph(3, ((0, 0),))
    with pytest.raises(InvalidGraph):
        LabeledGraph(3, ((0, 1), (1, 0)))
    with pytest.raises(InvalidGraph):
        LabeledGraph(3, ((0, 3),))
    assert LabeledGraph(3, ((2, 1), (1, 0))).edges == ((0, 1), (1, 2))


def test_constraint_pair():
    with pytest.raises(InvalidConstraint):
        ConstraintPair.of(4, [(0, 1)], [(1, 0)])
    c = ConstraintPair.of(4, [(0, 1), (0, 2)], [(2, 3)])
    assert not c.fits(make_sequence([1, 1, 1, 1]))
    assert c.fits(make_sequence([2, 1, 2, 1]))
    with pytest.raises(InvalidConstraint):
        c.validate(make_sequence([1, 1, 1, 1]))
    assert c.admits(LabeledGraph(4, ((0, 1), (0, 2), (1, 3))))
    assert not c.admits(LabeledGraph(4, ((0, 1), (0, 2), (2, 3))))


def test_multigraph_counts():
    mg = Multigraph(3, ((0, 0), (1, 2), (2, 1), (1, 2)))
    assert mg.loop_count == 1 and mg.multi_edge_count == 2
    assert sum(mg.degrees()) == 8 and not mg.is_simple
    assert Multigraph(2, ((0, 1),)).to_simple().edges == ((0, 1),)


def test_parse_edge_list():
    assert parse_edge_list("1 2\n3 4\n") == [(0, 1), (2, 3)]
    assert parse_edge_list("[[1, 2], [2, 3]]") == [(0, 1), (1, 2)]
    with pytest.raises(InvalidGraph):
        parse_edge_list("1 5", n=4)


def _random_graph(rng, n, p):
    return LabeledGraph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 15), st.floats(0, 1), st.integers(0, 10**6))
def test_structural_identities(n, p, seed):
    G = _random_graph(random.Random(seed), n, p)
    deg = subgraph_degrees(G)
    assert sum(deg) == 2 * G.num_edges
    assert boundary(G) == {i for i, x in enumerate(deg) if x >= 1}
    # adjacency agrees with the edge set
    for u in range(n):
        assert G.adjacency[u] == {v for v in range(n) if v != u and G.has_edge(u, v)}
    # components agree with networkx
    nxg = nx.Graph()
    nxg.add_nodes_from(range(n))
    nxg.add_edges_from(G.edges)
    assert sorted(map(sorted, components(G))) == sorted(map(sorted, nx.connected_components(nxg)))
    assert is_connected(G) == nx.is_connected(nxg)
    # e(S, complement) = 0 exactly when S is a union of components
    rng = random.Random(seed + 1)
    S = {v for v in range(n) if rng.random() < 0.5}
    comp_union = all(c <= S or not (c & S) for c in components(G))
    assert (edges_between(G, S, set(range(n)) - S) == 0) == comp_union
