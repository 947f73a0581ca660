"""Validated degree sequences and the scalar statistics derived from them.

Vertices are labelled ``0 .. n-1`` in the order the caller supplied them.
Internally the sequence is also kept sorted non-increasingly, since
``Delta``, ``J`` and the prefix sums are defined on the sorted order.
"""
from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import NegativeDegree, NotGraphical, OddSum, TooSmall, VertexOutOfRange

# Base of the logarithm in the heavy-vertex threshold sqrt(M) / log(M).
HEAVY_LOG = math.log


def is_graphical(degrees: Iterable[int]) -> bool:
    """Erdos-Gallai test. Accepts degrees in any order."""
    d = sorted((int(x) for x in degrees), reverse=True)
    if not d:
        return True
    if d[-1] < 0 or sum(d) % 2:
        return False
    n = len(d)
    if d[0] > n - 1:
        return False
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + d[i]
    neg = [-x for x in d]
    lhs = 0
    for k in range(1, n + 1):
        lhs += d[k - 1]
        # positions >= k holding a degree >= k contribute k, the rest their degree
        w = max(k, bisect.bisect_right(neg, -k))
        rhs = k * (k - 1) + k * (w - k) + suffix[w]
        if lhs > rhs:
            return False
    return True


@dataclass(frozen=True)
class DegreeStats:
    M: int
    Delta: int
    delta: int
    J: int
    M2: int
    n1: int
    n2: int
    prefix: tuple  # prefix[k] = d_1 + ... + d_k on the sorted order, prefix[0] = 0

    def D(self, k: int) -> int:
        return self.prefix[k]


@dataclass(frozen=True)
class DegreeSequence:
    """A graphical degree sequence.

    ``labeled[v]`` is the degree of vertex ``v`` (input order);
    ``degrees`` is the same multiset sorted non-increasingly and
    ``order[k]`` is the label sitting at sorted position ``k``.
    """

    labeled: tuple
    degrees: tuple = field(init=False)
    order: tuple = field(init=False)
    stats: DegreeStats = field(init=False, repr=False)

    def __post_init__(self):
        raw = tuple(int(x) for x in self.labeled)
        if not raw:
            raise ValueError("degree sequence must be non-empty")
        for v, x in enumerate(raw):
            if x < 0:
                raise NegativeDegree(f"vertex {v} has negative degree {x}")
        if sum(raw) % 2:
            raise OddSum(f"degree sum {sum(raw)} is odd")
        if not is_graphical(raw):
            raise NotGraphical(f"sequence {list(raw)} fails Erdos-Gallai")
        order = tuple(sorted(range(len(raw)), key=lambda v: (-raw[v], v)))
        degrees = tuple(raw[v] for v in order)
        object.__setattr__(self, "labeled", raw)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "stats", _compute_stats(degrees))

    @property
    def n(self) -> int:
        return len(self.labeled)

    @property
    def M(self) -> int:
        return self.stats.M

    @property
    def Delta(self) -> int:
        return self.stats.Delta

    @property
    def delta(self) -> int:
        return self.stats.delta

    @property
    def J(self) -> int:
        return self.stats.J

    def __len__(self):
        return len(self.labeled)

    def __getitem__(self, v: int) -> int:
        return self.labeled[v]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.labeled, dtype=np.int64)

    def check_vertex(self, v: int) -> int:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(f"vertex {v} not in 0..{self.n - 1}")
        return v


def _compute_stats(degrees: Sequence[int]) -> DegreeStats:
    n = len(degrees)
    prefix = [0]
    for x in degrees:
        prefix.append(prefix[-1] + x)
    Delta = degrees[0]
    return DegreeStats(
        M=prefix[-1],
        Delta=Delta,
        delta=degrees[-1],
        J=prefix[min(Delta, n)],
        M2=sum(x * x for x in degrees),
        n1=sum(1 for x in degrees if x == 1),
        n2=sum(1 for x in degrees if x == 2),
        prefix=tuple(prefix),
    )


def make_sequence(raw: Iterable[int]) -> DegreeSequence:
    """Validate ``raw`` and return a :class:`DegreeSequence`.

    Raises OddSum, NotGraphical or NegativeDegree.
    """
    return DegreeSequence(tuple(raw))


def subset_stats(d: DegreeSequence, S: Iterable[int]) -> tuple[int, int]:
    """Return ``(d(S), Delta_S)``; ``Delta_S`` is 0 for the empty set."""
    total = 0
    biggest = 0
    for v in set(S):
        x = d[d.check_vertex(v)]
        total += x
        biggest = max(biggest, x)
    return total, biggest


def heavy_threshold(M: int) -> float:
    if M < 3:
        raise TooSmall(f"heavy set needs M >= 3, got M={M}")
    return math.sqrt(M) / HEAVY_LOG(M)


def heavy_set(d: DegreeSequence) -> frozenset:
    """Vertices whose degree is at least ``sqrt(M) / ln(M)``."""
    t = heavy_threshold(d.M)
    return frozenset(v for v, x in enumerate(d.labeled) if x >= t)


def parse_degrees(text: str) -> list[int]:
    """Parse the degree-sequence text format.

    Accepts one integer per line or comma-separated integers. A token of the
    form ``kxN`` expands to ``N`` copies of ``k``; blank lines and ``#``
    comments are ignored.
    """
    out: list[int] = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        for tok in line.replace(",", " ").split():
            if "x" in tok:
                k, _, reps = tok.partition("x")
                out.extend([int(k)] * int(reps))
            else:
                out.append(int(tok))
    if not out:
        raise ValueError("no degrees found")
    return out
