"""Simple labelled graphs, constraint pairs and structural observables."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .degree_core import DegreeSequence
from .errors import DegreeMismatch, InvalidConstraint, InvalidGraph


def canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


def edge_index(n: int) -> dict:
    """Map each canonical pair ``(u, v)`` to its rank in lexicographic order."""
    out = {}
    k = 0
    for u in range(n):
        for v in range(u + 1, n):
            out[(u, v)] = k
            k += 1
    return out


@dataclass(frozen=True)
class LabeledGraph:
    """Simple graph on vertices ``0 .. n-1`` stored as a sorted edge tuple."""

    n: int
    edges: tuple = ()

    def __post_init__(self):
        seen = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise InvalidGraph(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidGraph(f"edge {u}-{v} outside 0..{self.n - 1}")
            c = canon(u, v)
            if c in seen:
                raise InvalidGraph(f"duplicate edge {c[0]}-{c[1]}")
            seen.add(c)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "LabeledGraph":
        return cls(n, tuple(edges))

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> tuple:
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    def __len__(self):
        return len(self.edges)

    def __contains__(self, e) -> bool:
        u, v = e
        return canon(u, v) in self.edge_set

    def has_edge(self, u: int, v: int) -> bool:
        return canon(u, v) in self.edge_set

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        return subgraph_degrees(self)

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def union(self, other: "LabeledGraph") -> "LabeledGraph":
        return LabeledGraph(self.n, tuple(self.edge_set | other.edge_set))

    def isdisjoint(self, other: "LabeledGraph") -> bool:
        return self.edge_set.isdisjoint(other.edge_set)

    def issubgraph(self, other: "LabeledGraph") -> bool:
        return self.edge_set <= other.edge_set

    def mask(self, index: dict | None = None) -> int:
        """Bitmask over the lexicographic pair index."""
        index = index or edge_index(self.n)
        m = 0
        for e in self.edges:
            m |= 1 << index[e]
        return m

    @classmethod
    def from_mask(cls, n: int, mask: int, pairs: list | None = None) -> "LabeledGraph":
        pairs = pairs or list(edge_index(n))
        return cls(n, tuple(pairs[k] for k in range(len(pairs)) if mask >> k & 1))


def empty_graph(n: int) -> LabeledGraph:
    return LabeledGraph(n, ())


@dataclass(frozen=True)
class ConstraintPair:
    """Required edges ``H1`` and forbidden edges ``H2`` on a common vertex set."""

    H1: LabeledGraph
    H2: LabeledGraph

    def __post_init__(self):
        if self.H1.n != self.H2.n:
            raise InvalidConstraint("H1 and H2 live on different vertex sets")
        if not self.H1.isdisjoint(self.H2):
            raise InvalidConstraint("H1 and H2 share an edge")

    @classmethod
    def of(cls, n: int, required=(), forbidden=()) -> "ConstraintPair":
        return cls(LabeledGraph(n, tuple(required)), LabeledGraph(n, tuple(forbidden)))

    @property
    def n(self) -> int:
        return self.H1.n

    def fits(self, d: DegreeSequence) -> bool:
        """True when ``d^{H1}`` is dominated by ``d`` componentwise."""
        if d.n != self.n:
            return False
        return all(h <= x for h, x in zip(subgraph_degrees(self.H1), d.labeled))

    def validate(self, d: DegreeSequence) -> None:
        if d.n != self.n:
            raise InvalidConstraint(f"constraint on {self.n} vertices, sequence has {d.n}")
        for v, (h, x) in enumerate(zip(subgraph_degrees(self.H1), d.labeled)):
            if h > x:
                raise InvalidConstraint(f"H1 needs degree {h} at vertex {v}, d_v = {x}")

    def admits(self, G: LabeledGraph) -> bool:
        """``H1`` inside ``G`` and ``H2`` disjoint from it."""
        return self.H1.issubgraph(G) and self.H2.isdisjoint(G)


@dataclass(frozen=True)
class Multigraph:
    """Projection of a pairing: edges may repeat and loops are allowed."""

    n: int
    edges: tuple  # canonical (u, v) with u <= v, multiplicity by repetition
    loop_count: int = field(init=False)
    multi_edge_count: int = field(init=False)

    def __post_init__(self):
        edges = tuple(sorted(canon(int(u), int(v)) for u, v in self.edges))
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "loop_count", sum(1 for u, v in edges if u == v))
        mult = Counter(e for e in edges if e[0] != e[1])
        object.__setattr__(self, "multi_edge_count", sum(c - 1 for c in mult.values()))

    @property
    def is_simple(self) -> bool:
        return self.loop_count == 0 and self.multi_edge_count == 0

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def to_simple(self) -> LabeledGraph:
        if not self.is_simple:
            raise InvalidGraph("multigraph has loops or repeated edges")
        return LabeledGraph(self.n, self.edges)


def subgraph_degrees(H: LabeledGraph) -> list[int]:
    deg = [0] * H.n
    for u, v in H.edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def boundary(H: LabeledGraph) -> frozenset:
    return frozenset(x for e in H.edges for x in e)


class UnionFind:
    """Union-find with path halving and union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


def components(G: LabeledGraph) -> list[frozenset]:
    """Connected components, each a vertex set, ordered by smallest member."""
    uf = UnionFind(G.n)
    for u, v in G.edges:
        uf.union(u, v)
    parts: dict = {}
    for x in range(G.n):
        parts.setdefault(uf.find(x), set()).add(x)
    return sorted((frozenset(p) for p in parts.values()), key=min)


def is_connected(G: LabeledGraph) -> bool:
    if G.n == 0:
        return False
    uf = UnionFind(G.n)
    for u, v in G.edges:
        uf.union(u, v)
    return uf.count == 1


def same_component(G: LabeledGraph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    if len(vs) <= 1:
        return True
    uf = UnionFind(G.n)
    for u, v in G.edges:
        uf.union(u, v)
    r = uf.find(vs[0])
    return all(uf.find(x) == r for x in vs[1:])


def _check_degrees(G: LabeledGraph, d: DegreeSequence) -> None:
    if G.n != d.n or tuple(subgraph_degrees(G)) != d.labeled:
        raise DegreeMismatch("graph does not realise the degree sequence")


def count_isolated_edges(G: LabeledGraph, d: DegreeSequence) -> int:
    """Y: edges whose two endpoints both have degree 1."""
    _check_degrees(G, d)
    return sum(1 for u, v in G.edges if d[u] == 1 and d[v] == 1)


def count_isolated_triangles(G: LabeledGraph, d: DegreeSequence) -> int:
    """Z: triangles whose three vertices all have degree 2."""
    _check_degrees(G, d)
    adj = G.adjacency
    z = 0
    for x in range(G.n):
        if d[x] != 2:
            continue
        y, w = sorted(adj[x])
        if x < y and d[y] == 2 and d[w] == 2 and w in adj[y]:
            z += 1
    return z


def edges_between(G: LabeledGraph, S1: Iterable[int], S2: Iterable[int]) -> int:
    """Number of edges with one end in ``S1`` and the other in ``S2``.

    Each edge is counted once, so ``S1 == S2`` gives the induced edge count.
    """
    A, B = set(S1), set(S2)
    return sum(1 for u, v in G.edges if (u in A and v in B) or (v in A and u in B))


def parse_edge_list(text: str, n: int | None = None) -> list[tuple[int, int]]:
    """Parse ``u v`` lines (1-indexed) or a JSON array of pairs into 0-based pairs."""
    import json

    text = text.strip()
    if text.startswith("["):
        raw = json.loads(text)
    else:
        raw = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                a, b = line.replace(",", " ").split()
                raw.append((a, b))
    pairs = [(int(a) - 1, int(b) - 1) for a, b in raw]
    for u, v in pairs:
        if min(u, v) < 0 or (n is not None and max(u, v) >= n):
            raise InvalidGraph(f"edge {u + 1} {v + 1} out of range")
    return pairs
