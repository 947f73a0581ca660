"""Configuration-model sampling and seeded Monte Carlo estimation.

A pairing is a uniform perfect matching of the ``M`` points, where vertex
``v`` owns ``d_v`` consecutive points. Conditioning the projected multigraph
on being simple gives the uniform distribution on simple graphs with degree
sequence ``d`` (every simple graph has the same number ``prod d_i!`` of
pairings), so rejection is exact.

Replicate ``i`` of an estimate always draws from the stream
``seeding.stream(master_seed, i)``; work is split across threads by
replicate index only, so estimates are bit-identical for any worker count.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Optional

import numpy as np

from .degree_core import DegreeSequence
from .errors import OddSum, RejectionBudgetExhausted
from .graph_core import LabeledGraph, Multigraph
from .seeding import stream

MAX_TRIES = 10**6
Z95 = 1.96


@dataclass(frozen=True)
class Pairing:
    """``matching`` holds ``M/2`` point pairs; ``owner[p]`` is the bin of point ``p``."""

    degrees: tuple
    matching: tuple

    @property
    def owner(self) -> np.ndarray:
        return owner_array(self.degrees)

    @property
    def M(self) -> int:
        return sum(self.degrees)


def owner_array(degrees) -> np.ndarray:
    return np.repeat(np.arange(len(degrees), dtype=np.int64), np.asarray(degrees, dtype=np.int64))


def _degrees_of(d) -> tuple:
    degrees = d.labeled if isinstance(d, DegreeSequence) else tuple(int(x) for x in d)
    if sum(degrees) % 2:
        raise OddSum(f"degree sum {sum(degrees)} is odd")
    return degrees


def sample_pairing(d, rng: np.random.Generator) -> Pairing:
    """Uniform perfect matching of the points.

    A uniform permutation cut into consecutive pairs is uniform over
    matchings: each matching arises from exactly ``2^{M/2} (M/2)!`` orders.
    """
    degrees = _degrees_of(d)
    M = sum(degrees)
    perm = rng.permutation(M).reshape(-1, 2)
    perm.sort(axis=1)
    return Pairing(degrees, tuple(map(tuple, perm.tolist())))


def project(p: Pairing) -> Multigraph:
    owner = p.owner
    return Multigraph(len(p.degrees), tuple((int(owner[a]), int(owner[b])) for a, b in p.matching))


def is_simple(p: Pairing) -> bool:
    return project(p).is_simple


# -- array fast path --------------------------------------------------------

def pairing_edges(owner: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Draw a pairing and return its multigraph as an ``(M/2, 2)`` array, smaller end first."""
    e = owner[rng.permutation(owner.shape[0])].reshape(-1, 2)
    e.sort(axis=1)
    return e


def edges_simple(e: np.ndarray, n: int) -> bool:
    if e.shape[0] == 0:
        return True
    if np.any(e[:, 0] == e[:, 1]):
        return False
    key = np.sort(e[:, 0] * n + e[:, 1])
    return not np.any(key[1:] == key[:-1])


def sample_simple_edges(d, rng: np.random.Generator, max_tries: int = MAX_TRIES) -> tuple[np.ndarray, int]:
    """Rejection-sample a simple graph; returns ``(edges, tries)``."""
    degrees = _degrees_of(d)
    owner = owner_array(degrees)
    n = len(degrees)
    for tries in range(1, max_tries + 1):
        e = pairing_edges(owner, rng)
        if edges_simple(e, n):
            return e, tries
    raise RejectionBudgetExhausted(f"no simple pairing in {max_tries} tries")


def sample_simple(d, rng: np.random.Generator, max_tries: int = MAX_TRIES, return_tries: bool = False):
    """Uniform element of G(n, d) by rejection from the pairing model."""
    e, tries = sample_simple_edges(d, rng, max_tries)
    G = LabeledGraph(len(_degrees_of(d)), tuple(map(tuple, e.tolist())))
    return (G, tries) if return_tries else G


# -- Monte Carlo ------------------------------------------------------------

@dataclass
class MonteCarloEstimate:
    replicates: int
    total: float  # successes for proportions, sum for means
    point_estimate: float
    ci_low: float
    ci_high: float
    seed: int
    acceptance_rate: Optional[float] = None
    kind: str = "proportion"

    def to_dict(self) -> dict:
        return asdict(self)


def wilson_interval(successes: int, n: int, z: float = Z95) -> tuple[float, float]:
    if n == 0:
        return 0.0, 1.0
    p = successes / n
    den = 1 + z * z / n
    centre = (p + z * z / (2 * n)) / den
    half = z / den * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
    lo = max(0.0, min(centre - half, p))
    hi = min(1.0, max(centre + half, p))
    return lo, hi


def proportion_estimate(successes: int, n: int, seed: int, acceptance_rate=None) -> MonteCarloEstimate:
    lo, hi = wilson_interval(successes, n)
    return MonteCarloEstimate(n, successes, successes / n if n else float("nan"), lo, hi, seed, acceptance_rate)


def mean_estimate(values, seed: int, acceptance_rate=None, z: float = Z95) -> MonteCarloEstimate:
    x = np.asarray(values, dtype=float)
    n = x.size
    m = float(x.mean())
    se = float(x.std(ddof=1) / math.sqrt(n)) if n > 1 else float("inf")
    return MonteCarloEstimate(n, float(x.sum()), m, m - z * se, m + z * se, seed, acceptance_rate, "mean")


def resolve_workers(workers: Optional[int]) -> int:
    if workers is None:
        env = os.environ.get("DEGSEQ_LAB_THREADS")
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(workers))


def run_replicates(
    d,
    fn: Callable[[np.ndarray], object],
    replicates: int,
    master_seed: int,
    target: str = "simple_graph",
    max_tries: int = MAX_TRIES,
    workers: Optional[int] = 1,
) -> tuple[list, int]:
    """Apply ``fn`` to the edge array of each replicate.

    Returns ``(results in replicate order, total pairing draws)``. For the
    ``multigraph`` target every draw is kept, loops and repeats included.
    """
    if replicates < 1:
        raise ValueError("replicates must be >= 1")
    if target not in ("simple_graph", "multigraph"):
        raise ValueError(f"unknown target {target!r}")
    degrees = _degrees_of(d)
    owner = owner_array(degrees)
    n = len(degrees)

    def one(i: int):
        rng = stream(master_seed, i)
        if target == "multigraph":
            return fn(pairing_edges(owner, rng)), 1
        for tries in range(1, max_tries + 1):
            e = pairing_edges(owner, rng)
            if edges_simple(e, n):
                return fn(e), tries
        raise RejectionBudgetExhausted(f"replicate {i}: no simple pairing in {max_tries} tries")

    def chunk(lo: int, hi: int):
        return [one(i) for i in range(lo, hi)]

    workers = resolve_workers(workers)
    if workers == 1 or replicates < 2 * workers:
        out = chunk(0, replicates)
    else:
        step = math.ceil(replicates / workers)
        bounds = [(lo, min(lo + step, replicates)) for lo in range(0, replicates, step)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda b: chunk(*b), bounds))
        out = [x for part in parts for x in part]
    return [r for r, _ in out], sum(t for _, t in out)


def estimate_event(
    d,
    predicate: Callable,
    replicates: int,
    master_seed: int,
    target: str = "simple_graph",
    max_tries: int = MAX_TRIES,
    workers: Optional[int] = 1,
) -> MonteCarloEstimate:
    """Estimate P(predicate) with a 95% Wilson interval.

    The predicate sees a :class:`LabeledGraph` for the ``simple_graph``
    target and a :class:`Multigraph` for ``multigraph``.
    """
    n = len(_degrees_of(d))
    if target == "multigraph":
        def fn(e):
            return bool(predicate(Multigraph(n, tuple(map(tuple, e.tolist())))))
    else:
        def fn(e):
            return bool(predicate(LabeledGraph(n, tuple(map(tuple, e.tolist())))))
    hits, tries = run_replicates(d, fn, replicates, master_seed, target, max_tries, workers)
    return proportion_estimate(sum(hits), replicates, master_seed, replicates / tries)
