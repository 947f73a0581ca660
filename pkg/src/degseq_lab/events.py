"""Named graph events, shared by the oracle, the sampler and the CLI.

Each factory returns a plain callable ``LabeledGraph -> bool``.
"""
from __future__ import annotations

from .degree_core import DegreeSequence
from .graph_core import (
    LabeledGraph,
    count_isolated_edges,
    count_isolated_triangles,
    edges_between,
    is_connected,
    same_component,
)


def always(G) -> bool:
    return True


def connected(G: LabeledGraph) -> bool:
    return is_connected(G)


def disconnected(G: LabeledGraph) -> bool:
    return not is_connected(G)


def edge_present(u: int, v: int):
    def pred(G):
        return G.has_edge(u, v)

    return pred


def contains(H: LabeledGraph):
    """The event H+."""
    def pred(G):
        return H.issubgraph(G)

    return pred


def avoids(H: LabeledGraph):
    """The event H-."""
    def pred(G):
        return H.isdisjoint(G)

    return pred


def cut_at_least(S1, S2, ell: int):
    S1, S2 = frozenset(S1), frozenset(S2)

    def pred(G):
        return edges_between(G, S1, S2) >= ell

    return pred


def isolated_edges_equal(d: DegreeSequence, k: int):
    def pred(G):
        return count_isolated_edges(G, d) == k

    return pred


def isolated_triangles_equal(d: DegreeSequence, k: int):
    def pred(G):
        return count_isolated_triangles(G, d) == k

    return pred


def together(vertices):
    vs = tuple(vertices)

    def pred(G):
        return same_component(G, vs)

    return pred
