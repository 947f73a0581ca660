"""Exact ground truth for small degree sequences.

Everything here is exhaustive: every simple labelled graph with the given
degree sequence is visited, probabilities are ``fractions.Fraction`` and
switching counts are integers. Use it at desk scale only (the default
budget stops at ``M = 24`` and ``n = 12``).
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Optional

import numpy as np

from .degree_core import DegreeSequence, is_graphical
from .errors import BudgetExceeded, EmptyCondition, OddSum, PreconditionViolated
from .graph_core import ConstraintPair, LabeledGraph, canon, edge_index

MAX_M = 24
MAX_N = 12
MAX_COST = 10**10
STORE_CAP = 10**6
MAX_PAIRING_M = 12


@dataclass
class EnumerationResult:
    total: int = 0
    satisfying: int = 0
    graphs: Optional[list] = None

    def probability(self) -> Fraction:
        return Fraction(self.satisfying, self.total)


@dataclass
class SwitchingCensus:
    """Count of valid forward or backward switchings on one graph.

    ``rejected`` tallies, for every tuple in ``[n]^4`` that is not a valid
    switching, the first condition it fails (``"1"``, ``"2"``, ``"3"``), so
    ``sum(rejected.values()) == raw - count``.
    """

    direction: str
    count: int
    raw: int
    rejected: dict = field(default_factory=dict)

    @property
    def forward(self) -> Optional[int]:
        return self.count if self.direction == "forward" else None

    @property
    def backward(self) -> Optional[int]:
        return self.count if self.direction == "backward" else None


class DoubleCount(NamedTuple):
    T_forward: int
    T_backward: int


class PairingCounts(NamedTuple):
    total: int
    simple: int


# ---------------------------------------------------------------------------
# enumeration of G(n, d)
# ---------------------------------------------------------------------------

def search_cost(degrees: Iterable[int]) -> int:
    """Leaf bound for the backtracking tree: prod_i C(open_i - 1, d_i).

    Vertices are closed in non-increasing degree order; each one picks its
    remaining neighbours among the vertices still open.
    """
    cost = 1
    open_count = 0
    ds = sorted(degrees, reverse=True)
    open_count = len(ds)
    for x in ds:
        cost *= max(1, math.comb(open_count - 1, x))
        open_count -= 1
    return cost


def check_budget(d: DegreeSequence, max_M=MAX_M, max_n=MAX_N, max_cost=MAX_COST) -> None:
    if d.M > max_M or d.n > max_n:
        raise BudgetExceeded(f"n={d.n}, M={d.M} exceeds budget n<={max_n}, M<={max_M}")
    cost = search_cost(d.labeled)
    if cost > max_cost:
        raise BudgetExceeded(f"estimated search cost {cost:.3g} exceeds {max_cost:.3g}")


def iter_masks(labeled: tuple) -> Iterable[int]:
    """Yield each graph with degree sequence ``labeled`` as an edge bitmask.

    Bit ``k`` stands for the ``k``-th pair in lexicographic order. The
    vertex with the largest residual degree (smallest label on ties) is
    closed next by choosing all its remaining neighbours at once among the
    open vertices, so every graph is produced exactly once. The residual
    sequence is checked with Erdos-Gallai after every choice.
    """
    n = len(labeled)
    index = edge_index(n)
    bit = [[0] * n for _ in range(n)]
    for (u, v), k in index.items():
        bit[u][v] = bit[v][u] = 1 << k
    residual = list(labeled)

    def rec(open_set: list, mask: int):
        live = [x for x in open_set if residual[x] > 0]
        if not live:
            yield mask
            return
        v = min(live, key=lambda x: (-residual[x], x))
        need = residual[v]
        cands = sorted((x for x in live if x != v), key=lambda x: (-residual[x], x))
        if need > len(cands):
            return
        rest = [x for x in open_set if x != v]
        residual[v] = 0
        for chosen in itertools.combinations(cands, need):
            for x in chosen:
                residual[x] -= 1
            if is_graphical([residual[x] for x in rest]):
                add = 0
                for x in chosen:
                    add |= bit[v][x]
                yield from rec(rest, mask | add)
            for x in chosen:
                residual[x] += 1
        residual[v] = need

    if is_graphical(labeled):
        yield from rec(list(range(n)), 0)


def enumerate_masks(d: DegreeSequence, **budget) -> list[int]:
    check_budget(d, **budget)
    return list(iter_masks(d.labeled))


def enumerate_graphs(
    d: DegreeSequence,
    visitor: Optional[Callable[[LabeledGraph], None]] = None,
    predicate: Optional[Callable[[LabeledGraph], bool]] = None,
    store_cap: int = STORE_CAP,
    **budget,
) -> EnumerationResult:
    """Visit every graph in G(n, d) once, in a deterministic order.

    ``visitor`` is called on each graph; ``predicate`` (if given) is counted
    into ``satisfying``. Graphs are kept in ``result.graphs`` while the total
    stays within ``store_cap``.
    """
    check_budget(d, **budget)
    pairs = list(edge_index(d.n))
    res = EnumerationResult(graphs=[])
    for mask in iter_masks(d.labeled):
        G = LabeledGraph.from_mask(d.n, mask, pairs)
        res.total += 1
        if visitor is not None:
            visitor(G)
        if predicate is not None and predicate(G):
            res.satisfying += 1
        if res.graphs is not None:
            if res.total <= store_cap:
                res.graphs.append(G)
            else:
                res.graphs = None
    return res


# ---------------------------------------------------------------------------
# exact probabilities
# ---------------------------------------------------------------------------

def _constraint_masks(c: ConstraintPair, index: dict) -> tuple[int, int]:
    return c.H1.mask(index), c.H2.mask(index)


def exact_event_probability(d: DegreeSequence, predicate, **budget) -> Fraction:
    res = enumerate_graphs(d, predicate=predicate, store_cap=0, **budget)
    return Fraction(res.satisfying, res.total)


def exact_conditional_probability(d: DegreeSequence, c: ConstraintPair, u: int, v: int, **budget) -> Fraction:
    """P(uv in G | H1 inside G, H2 disjoint from G), exactly."""
    check_budget(d, **budget)
    index = edge_index(d.n)
    h1, h2 = _constraint_masks(c, index)
    e = 1 << index[canon(u, v)]
    S = Sbar = 0
    for m in iter_masks(d.labeled):
        if m & h1 == h1 and not m & h2:
            if m & e:
                S += 1
            else:
                Sbar += 1
    if S + Sbar == 0:
        raise EmptyCondition("no graph satisfies H1+ and H2-")
    return Fraction(S, S + Sbar)


def exact_joint_probability(d: DegreeSequence, c: ConstraintPair, **budget) -> Fraction:
    """P(H1+ | H2-), exactly."""
    check_budget(d, **budget)
    index = edge_index(d.n)
    h1, h2 = _constraint_masks(c, index)
    num = den = 0
    for m in iter_masks(d.labeled):
        if not m & h2:
            den += 1
            if m & h1 == h1:
                num += 1
    if den == 0:
        raise EmptyCondition("no graph satisfies H2-")
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# switchings
# ---------------------------------------------------------------------------

def _distinct(u, v, x, a, y, b) -> bool:
    # all six distinct, except that x == y is allowed
    if x == y:
        return len({u, v, x, a, b}) == 5
    return len({u, v, x, a, y, b}) == 6


def switching_census(G: LabeledGraph, c: ConstraintPair, u: int, v: int, direction: str = "forward") -> SwitchingCensus:
    """Brute-force count of switchings over all of ``[n]^4``.

    forward (G contains uv): (x, a, y, b) with xa, yb in G minus H1 and none
    of xu, yv, ab in G union H2. backward (G' misses uv): xu, yv, ab in G'
    minus H1 and neither xa nor yb in G' union H2.
    """
    if direction not in ("forward", "backward"):
        raise ValueError(f"unknown direction {direction!r}")
    if u == v:
        raise PreconditionViolated("u == v")
    if not c.admits(G):
        raise PreconditionViolated("graph does not satisfy H1+ and H2-")
    has_uv = G.has_edge(u, v)
    if direction == "forward" and not has_uv:
        raise PreconditionViolated("forward switching needs uv in G")
    if direction == "backward" and has_uv:
        raise PreconditionViolated("backward switching needs uv not in G")

    n = G.n
    g = G.edge_set
    h1 = c.H1.edge_set
    h2 = c.H2.edge_set

    def free(p, q):  # edge of G outside H1
        e = canon(p, q)
        return p != q and e in g and e not in h1

    def blocked(p, q):  # edge of G or of H2
        e = canon(p, q)
        return p != q and (e in g or e in h2)

    rejected = {"1": 0, "2": 0, "3": 0}
    count = 0
    for x, a, y, b in itertools.product(range(n), repeat=4):
        if not _distinct(u, v, x, a, y, b):
            rejected["1"] += 1
            continue
        if direction == "forward":
            ok2 = free(x, a) and free(y, b)
            ok3 = not (blocked(x, u) or blocked(y, v) or blocked(a, b))
        else:
            ok2 = not (blocked(x, a) or blocked(y, b))
            ok3 = free(x, u) and free(y, v) and free(a, b)
        if not ok2:
            rejected["2"] += 1
        elif not ok3:
            rejected["3"] += 1
        else:
            count += 1
    return SwitchingCensus(direction, count, n**4, rejected)


def _adjacency_stack(masks: list[int], n: int) -> np.ndarray:
    pairs = list(edge_index(n))
    iu = np.array([p[0] for p in pairs], dtype=np.intp)
    iv = np.array([p[1] for p in pairs], dtype=np.intp)
    bits = np.array([[m >> k & 1 for k in range(len(pairs))] for m in masks], dtype=bool).reshape(len(masks), len(pairs))
    A = np.zeros((len(masks), n, n), dtype=bool)
    A[:, iu, iv] = bits
    A[:, iv, iu] = bits
    return A


def _pair_matrix(G: LabeledGraph) -> np.ndarray:
    A = np.zeros((G.n, G.n), dtype=bool)
    for p, q in G.edges:
        A[p, q] = A[q, p] = True
    return A


def census_rows(A, H1, H2, u, v, direction: str) -> np.ndarray:
    """Vectorised switching counts, one per row.

    ``A``, ``H1`` and ``H2`` are boolean adjacency stacks of shape
    ``(r, n, n)`` (``H1``/``H2`` may also be a single ``(n, n)`` matrix);
    ``u`` and ``v`` are length-``r`` integer arrays. Per-row preconditions
    (H1 inside A, H2 disjoint, uv present for forward, absent for backward)
    are the caller's job.

    The distinctness rule leaves two coincidences to exclude once the edge
    conditions are in place (x = b and a = y); they are removed by
    inclusion-exclusion, so each row costs O(n^2).
    """
    A = np.asarray(A, dtype=bool)
    r, n, _ = A.shape
    rows = np.arange(r)
    u = np.broadcast_to(np.asarray(u, dtype=np.intp), (r,))
    v = np.broadcast_to(np.asarray(v, dtype=np.intp), (r,))
    ne = ~np.eye(n, dtype=bool)
    out = np.ones((r, n), dtype=bool)
    out[rows, u] = False
    out[rows, v] = False
    ok = out[:, :, None] & out[:, None, :]
    E1 = A & ~np.asarray(H1, dtype=bool)  # usable edges of G
    B = (A | np.asarray(H2, dtype=bool)) & ne  # pairs that may not be added
    i = np.int64
    if direction == "forward":
        P = (E1 & ok & ~B[rows, :, u][:, :, None]).astype(i)  # P[x, a]
        Q = (E1 & ok & ~B[rows, :, v][:, :, None]).astype(i)  # Q[y, b]
        N = (~B & ne & ok).astype(i)  # N[a, b]
        p = P.sum(axis=1)
        q = Q.sum(axis=1)
        NT = N.transpose(0, 2, 1)
        t1 = np.einsum("ra,rab,rb->r", p, N, q)
        t2 = np.einsum("rxa,rxa,rx->r", P, NT, q)
        t3 = np.einsum("ra,rab->r", p, Q * N)
        t4 = np.einsum("rxa,rxa->r", P, Q.transpose(0, 2, 1) * NT)
        return t1 - t2 - t3 + t4
    if direction == "backward":
        X = (E1[rows, :, u] & out).astype(i)
        Y = (E1[rows, :, v] & out).astype(i)
        R = (E1 & ok).astype(i)
        K = (~B & ne).astype(i)
        KT = K.transpose(0, 2, 1)
        U = np.einsum("rx,rxa->ra", X, K)
        V = np.einsum("ry,ryb->rb", Y, K)
        t1 = np.einsum("ra,rab,rb->r", U, R, V)
        t2 = np.einsum("rx,rax,rxa,rx->r", X, R, K, V)
        t3 = np.einsum("ra,ra,rab->r", U, Y, R * K)
        t4 = np.einsum("rx,ra,rax,rxa->r", X, Y, R * KT, K)
        return t1 - t2 - t3 + t4
    raise ValueError(f"unknown direction {direction!r}")


def census_batch(A: np.ndarray, H1: np.ndarray, H2: np.ndarray, u: int, v: int, direction: str) -> np.ndarray:
    """Switching counts for a stack of graphs sharing one (H1, H2, u, v)."""
    return census_rows(A, H1, H2, u, v, direction)


def double_count_check(d: DegreeSequence, c: ConstraintPair, u: int, v: int, **budget) -> DoubleCount:
    """Sum forward switchings over S and backward switchings over S-bar."""
    check_budget(d, **budget)
    index = edge_index(d.n)
    h1, h2 = _constraint_masks(c, index)
    e = 1 << index[canon(u, v)]
    S, Sbar = [], []
    for m in iter_masks(d.labeled):
        if m & h1 == h1 and not m & h2:
            (S if m & e else Sbar).append(m)
    H1, H2 = _pair_matrix(c.H1), _pair_matrix(c.H2)
    tf = int(census_batch(_adjacency_stack(S, d.n), H1, H2, u, v, "forward").sum()) if S else 0
    tb = int(census_batch(_adjacency_stack(Sbar, d.n), H1, H2, u, v, "backward").sum()) if Sbar else 0
    return DoubleCount(tf, tb)


# ---------------------------------------------------------------------------
# pairings
# ---------------------------------------------------------------------------

def enumerate_pairings(d, visitor: Optional[Callable] = None, max_M: int = MAX_PAIRING_M) -> PairingCounts:
    """Count all perfect matchings of the M points and the simple ones.

    ``d`` may be a DegreeSequence or any sequence of non-negative integers
    with even sum (graphical or not). ``visitor`` receives each matching as a
    tuple of point pairs together with its simplicity flag.
    """
    degrees = tuple(d.labeled) if isinstance(d, DegreeSequence) else tuple(int(x) for x in d)
    M = sum(degrees)
    if M % 2:
        raise OddSum(f"degree sum {M} is odd")
    if M > max_M:
        raise BudgetExceeded(f"M={M} exceeds pairing budget {max_M}")
    owner = [v for v, x in enumerate(degrees) for _ in range(x)]
    total = simple = 0
    matched = [False] * M
    stack: list = []

    def rec():
        nonlocal total, simple
        try:
            p = matched.index(False)
        except ValueError:
            total += 1
            pairs = [canon(owner[a], owner[b]) for a, b in stack]
            ok = all(a != b for a, b in pairs) and len(set(pairs)) == len(pairs)
            simple += ok
            if visitor is not None:
                visitor(tuple(stack), ok)
            return
        matched[p] = True
        for q in range(p + 1, M):
            if not matched[q]:
                matched[q] = True
                stack.append((p, q))
                rec()
                stack.pop()
                matched[q] = False
        matched[p] = False

    rec()
    return PairingCounts(total, simple)
