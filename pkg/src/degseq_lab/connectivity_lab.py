"""Monte Carlo reproduction of the connectivity transition.

Families are built from a base degree (3 by default) plus ``n1`` vertices of
degree 1 and ``n2`` vertices of degree 2, with ``n1 = round(c1 sqrt(M))``
and ``n2 = round(c2 M)`` solved self-consistently in ``M``. If the total
degree comes out odd, one base vertex is bumped from 3 to 4, which leaves
``n1`` and ``n2`` untouched.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .degree_core import DegreeSequence, heavy_set, make_sequence
from .errors import DegSeqError, PreconditionViolated
from .sampler import (
    MAX_TRIES,
    MonteCarloEstimate,
    mean_estimate,
    proportion_estimate,
    run_replicates,
    wilson_interval,
)
from .seeding import derive_seed

FAMILY_KINDS = ("regular", "base3_plus_ones", "base3_plus_twos", "custom")


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

@dataclass
class FamilySpec:
    kind: str = "base3_plus_ones"
    n: int = 2000
    c1: Sequence[float] = (0.0,)
    c2: Sequence[float] = (0.0,)
    base: int = 3
    n1: Optional[int] = None  # absolute counts override the coefficients
    n2: Optional[int] = None
    degrees: Optional[Sequence[int]] = None  # kind == "custom"

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        self.c1 = tuple(float(x) for x in _as_seq(self.c1))
        self.c2 = tuple(float(x) for x in _as_seq(self.c2))

    def points(self) -> list[tuple[float, float]]:
        if self.kind == "base3_plus_twos":
            return [(c1, c2) for c2 in self.c2 for c1 in self.c1]
        return [(c1, c2) for c1 in self.c1 for c2 in self.c2]

    def sequence(self, c1: float = 0.0, c2: float = 0.0) -> DegreeSequence:
        if self.kind == "custom":
            return make_sequence(self.degrees)
        if self.kind == "regular":
            return regular_sequence(self.n, self.base)
        if self.kind == "base3_plus_ones":
            c2 = 0.0 if self.n2 is None else c2
        if self.kind == "base3_plus_twos":
            c1 = 0.0 if self.n1 is None else c1
        return base_family(self.n, c1, c2, base=self.base, n1=self.n1, n2=self.n2)


def _as_seq(x):
    return x if isinstance(x, (list, tuple)) else (x,)


def regular_sequence(n: int, k: int = 3) -> DegreeSequence:
    return make_sequence([k] * n)


def _family_M(n: int, n1: int, n2: int, base: int) -> int:
    return base * (n - n1 - n2) + n1 + 2 * n2


def solve_counts(n: int, c1: float, c2: float, base: int = 3) -> tuple[int, int]:
    """Fixed point of n1 = round(c1 sqrt(M)), n2 = round(c2 M) with M = M(n1, n2)."""
    n1 = n2 = 0
    seen = set()
    for _ in range(200):
        M = _family_M(n, n1, n2, base)
        new = (int(round(c1 * math.sqrt(M))), int(round(c2 * M)))
        if new == (n1, n2) or new in seen:
            n1, n2 = new
            break
        seen.add((n1, n2))
        n1, n2 = new
    if n1 + n2 > n:
        raise ValueError(f"c1={c1}, c2={c2} ask for more special vertices than n={n}")
    return n1, n2


def base_family(n: int, c1: float = 0.0, c2: float = 0.0, base: int = 3,
                n1: Optional[int] = None, n2: Optional[int] = None) -> DegreeSequence:
    s1, s2 = solve_counts(n, c1, c2, base)
    n1 = s1 if n1 is None else n1
    n2 = s2 if n2 is None else n2
    nb = n - n1 - n2
    if nb < 1:
        raise ValueError("family needs at least one base vertex")
    degrees = [base] * nb + [2] * n2 + [1] * n1
    if sum(degrees) % 2:
        degrees[0] += 1
    return make_sequence(degrees)


def star_heavy_family(n: int, base: int = 3) -> DegreeSequence:
    """One vertex of degree ceil(sqrt(M)), the rest of degree ``base``."""
    hub = 1
    for _ in range(100):
        degrees = [hub] + [base] * (n - 1)
        if sum(degrees) % 2:
            degrees[1] += 1
        new = math.ceil(math.sqrt(sum(degrees)))
        if new == hub:
            break
        hub = new
    return make_sequence(degrees)


# ---------------------------------------------------------------------------
# observables on edge arrays (hot path)
# ---------------------------------------------------------------------------

def component_labels(e: np.ndarray, n: int) -> np.ndarray:
    if e.shape[0] == 0:
        return np.arange(n)
    A = coo_matrix((np.ones(e.shape[0], dtype=np.int8), (e[:, 0], e[:, 1])), shape=(n, n))
    return connected_components(A, directed=False)[1]


def edges_connected(e: np.ndarray, n: int) -> bool:
    return bool(np.all(component_labels(e, n) == 0))


def isolated_edges_fast(e: np.ndarray, deg: np.ndarray) -> int:
    one = deg == 1
    return int(np.count_nonzero(one[e[:, 0]] & one[e[:, 1]]))


def isolated_triangles_fast(e: np.ndarray, deg: np.ndarray) -> int:
    """Triangles on degree-2 vertices, via each vertex's sorted neighbour list."""
    two = np.flatnonzero(deg == 2)
    if two.size < 3:
        return 0
    src = np.concatenate([e[:, 0], e[:, 1]])
    dst = np.concatenate([e[:, 1], e[:, 0]])
    order = np.argsort(src, kind="stable")
    nbr = dst[order]
    start = np.concatenate([[0], np.cumsum(deg)[:-1]])
    a = nbr[start[two]]
    b = nbr[start[two] + 1]
    ok = (deg[a] == 2) & (deg[b] == 2)
    a, b = a[ok], b[ok]
    closes = (nbr[start[a]] == b) | (nbr[start[a] + 1] == b)
    return int(np.count_nonzero(closes)) // 3


# ---------------------------------------------------------------------------
# rows
# ---------------------------------------------------------------------------

CSV_FIELDS = ("c1", "c2", "n", "M", "n1", "n2", "p_connected", "ci_low", "ci_high",
              "mean_Y", "theory_Y", "mean_Z", "theory_Z", "replicates", "failed")


def theory_columns(n1: int, n2: int, M: int) -> dict:
    return {
        "theory_Y": n1**2 / (2 * M),
        "theory_YY": n1**4 / (4 * M**2),
        "theory_Z": 4 * n2**3 / (3 * M**3),
        "theory_ZZ": 16 * n2**6 / (9 * M**6),
    }


@dataclass
class SweepRow:
    c1: float
    c2: float
    n: int
    M: int
    n1: int
    n2: int
    replicates: int
    p_connected: float = float("nan")
    ci_low: float = float("nan")
    ci_high: float = float("nan")
    mean_Y: float = float("nan")
    mean_YY: float = float("nan")
    mean_Z: float = float("nan")
    mean_ZZ: float = float("nan")
    ci_Y: tuple = (float("nan"), float("nan"))
    ci_YY: tuple = (float("nan"), float("nan"))
    ci_Z: tuple = (float("nan"), float("nan"))
    ci_ZZ: tuple = (float("nan"), float("nan"))
    theory_Y: float = 0.0
    theory_YY: float = 0.0
    theory_Z: float = 0.0
    theory_ZZ: float = 0.0
    acceptance_rate: float = float("nan")
    failed: bool = False
    error: Optional[str] = None

    def csv_record(self) -> dict:
        return {k: getattr(self, k) for k in CSV_FIELDS}

    def to_dict(self) -> dict:
        out = asdict(self)
        for k in ("ci_Y", "ci_YY", "ci_Z", "ci_ZZ"):
            out[k] = list(out[k])
        return out


def _observe(deg: np.ndarray, n: int):
    def fn(e):
        y = isolated_edges_fast(e, deg)
        z = isolated_triangles_fast(e, deg)
        return edges_connected(e, n), y, z

    return fn


def _row_for(d: DegreeSequence, replicates: int, seed: int, c1=float("nan"), c2=float("nan"),
             max_tries=MAX_TRIES, workers=1) -> SweepRow:
    st = d.stats
    row = SweepRow(c1, c2, d.n, d.M, st.n1, st.n2, replicates, **theory_columns(st.n1, st.n2, d.M))
    deg = d.as_array()
    obs, tries = run_replicates(d, _observe(deg, d.n), replicates, seed, "simple_graph", max_tries, workers)
    conn = sum(1 for c, _, _ in obs if c)
    Y = np.array([y for _, y, _ in obs], dtype=float)
    Z = np.array([z for _, _, z in obs], dtype=float)
    row.p_connected = conn / replicates
    row.ci_low, row.ci_high = wilson_interval(conn, replicates)
    for name, values in (("Y", Y), ("YY", Y * (Y - 1)), ("Z", Z), ("ZZ", Z * (Z - 1))):
        est = mean_estimate(values, seed)
        setattr(row, "mean_" + name, est.point_estimate)
        setattr(row, "ci_" + name, (est.ci_low, est.ci_high))
    row.acceptance_rate = replicates / tries
    return row


def moment_experiment(d: DegreeSequence, replicates: int, seed: int, max_tries: int = MAX_TRIES,
                      workers: Optional[int] = 1) -> SweepRow:
    """Monte Carlo means of Y, Y(Y-1), Z, Z(Z-1) beside n1^2/2M, n1^4/4M^2,
    4 n2^3/3M^3 and 16 n2^6/9M^6."""
    return _row_for(d, replicates, seed, max_tries=max_tries, workers=workers)


def connectivity_sweep(spec: FamilySpec, replicates: int, seed: int, max_tries: int = MAX_TRIES,
                       workers: Optional[int] = 1) -> list[SweepRow]:
    """One row per grid point. Point ``k`` draws from seed ``derive_seed(seed, k)``.

    A point whose sequence cannot be built or sampled is kept as a row with
    ``failed=True`` rather than aborting the sweep.
    """
    rows = []
    for k, (c1, c2) in enumerate(spec.points()):
        try:
            d = spec.sequence(c1, c2)
        except (ValueError, DegSeqError) as exc:
            rows.append(SweepRow(c1, c2, spec.n, 0, 0, 0, replicates, failed=True, error=str(exc)))
            continue
        try:
            rows.append(_row_for(d, replicates, derive_seed(seed, k), c1, c2, max_tries, workers))
        except DegSeqError as exc:
            st = d.stats
            rows.append(SweepRow(c1, c2, d.n, d.M, st.n1, st.n2, replicates, failed=True, error=str(exc),
                                 **theory_columns(st.n1, st.n2, d.M)))
    return rows


def heavy_component_check(d: DegreeSequence, replicates: int, seed: int, max_tries: int = MAX_TRIES,
                          workers: Optional[int] = 1) -> MonteCarloEstimate:
    """Estimate P(all heavy vertices lie in one component)."""
    H = np.array(sorted(heavy_set(d)), dtype=np.int64)
    if H.size == 0:
        raise PreconditionViolated("heavy set is empty")
    n = d.n

    def fn(e):
        if H.size == 1:
            return True
        lab = component_labels(e, n)
        return bool(np.all(lab[H] == lab[H[0]]))

    hits, tries = run_replicates(d, fn, replicates, seed, "simple_graph", max_tries, workers)
    return proportion_estimate(sum(hits), replicates, seed, replicates / tries)


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

def fmt_float(x) -> str:
    """17 significant digits, so emitted files are stable byte for byte."""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def rows_to_csv(rows: Sequence[SweepRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in rows:
        rec = r.csv_record()
        w.writerow([fmt_float(rec[k]) for k in CSV_FIELDS])
    return buf.getvalue()


def rows_to_json(rows: Sequence[SweepRow]) -> list[dict]:
    return [{k: r.csv_record()[k] for k in CSV_FIELDS} for r in rows]
