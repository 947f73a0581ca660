"""Closed-form subgraph probability bounds for uniform random graphs with a
given degree sequence, evaluated at finite size.

The asymptotic ``1 + o(1)`` statements are never evaluated as such. Every
bound that can be checked against exact values routes through the explicit
correction factors (``f``/``g`` for a single edge, ``R``/``r`` for a set of
edges). When a correction factor leaves its domain the bound is reported as
inapplicable (``None``) together with the raw numbers, instead of raising.

The formula kernels (``conditional_terms``, ``joint_terms``) are written
against plain arithmetic so they evaluate on floats, numpy arrays or
``Fraction`` alike; pass ``one=Fraction(1)`` for exact rational output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .degree_core import DegreeSequence, subset_stats
from .errors import BadEll, DegenerateDenominator, EdgeInConstraint, InvalidConstraint, OddSum
from .graph_core import ConstraintPair, LabeledGraph, boundary, canon, empty_graph, subgraph_degrees

NEG_INF = float("-inf")


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

def conditional_terms(M, J, Delta, h, e2, maxdeg2, ru, rv, h2u, h2v, one=1.0):
    """Return ``(base, f_inverse, g_first, g)`` for a single-edge query.

    ``h``/``e2`` are the edge counts of H1/H2, ``maxdeg2`` the max degree
    of H2, ``ru``/``rv`` the residual degrees ``d_u - d_u^{H1}``,
    ``d_v - d_v^{H1}`` and ``h2u``/``h2v`` the H2-degrees of u and v.
    ``f = 1 / f_inverse`` (meaningful when ``f_inverse > 0``).
    """
    m = M - 2 * h
    base = one * ru * rv / m
    f_inverse = one - one * (3 * J + Delta * (8 + h2u + h2v)) / m - one * 2 * e2 * Delta**2 / m**2 + base
    g_first = one - one * (2 * J + 6 * Delta + 2 * maxdeg2 * Delta) / m
    g = g_first / (one + base)
    return base, f_inverse, g_first, g


def joint_terms(M, J, Delta, h, e2, maxdeg2, bmax, one=1.0):
    """Return ``(R, r)``, the correction rates of the joint bounds.

    ``bmax`` is the largest full degree over the vertices touched by H1.
    """
    m = M - 2 * h
    R = one * (6 * J + 2 * Delta * (8 + 2 * maxdeg2)) / m + one * 4 * e2 * Delta**2 / m**2
    r = one * (2 * J + 6 * Delta + 2 * maxdeg2 * Delta + bmax**2) / m
    return R, r


def falling(a: int, b: int) -> int:
    """(a)_b = a (a-1) ... (a-b+1); zero when b > a >= 0."""
    out = 1
    for t in range(b):
        out *= a - t
    return out


def log_falling(a: int, b: int) -> float:
    if b > a:
        return NEG_INF
    return math.fsum(math.log(a - t) for t in range(b))


def log_binom(a: int, b: int) -> float:
    if b < 0 or b > a:
        return NEG_INF
    return log_falling(a, b) - log_falling(b, b)


def _log_pos(x) -> float:
    if x <= 0:
        return NEG_INF
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


def _pair_product(M: int, count: int, offset: int) -> int:
    """prod_{i=1}^{count} (M - 2i + offset)."""
    out = 1
    for i in range(1, count + 1):
        out *= M - 2 * i + offset
    return out


def _log_pair_product(M: int, count: int, offset: int) -> float:
    return math.fsum(math.log(M - 2 * i + offset) for i in range(1, count + 1))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class BoundReport:
    """Lower/upper probability bounds with their ingredients.

    ``lower``/``upper`` are ``None`` when inapplicable; values above 1 are
    kept raw (see :meth:`clamped`). ``terms`` holds the raw f, g, R, r values
    (whichever apply) so inapplicable cases can still be inspected.
    """

    lower: object
    upper: object
    base_term: object
    correction_lower: object
    correction_upper: object
    applicability: dict
    log_value: dict
    terms: dict = field(default_factory=dict)

    def clamped(self) -> tuple:
        lo = None if self.lower is None else min(max(self.lower, 0), 1)
        hi = None if self.upper is None else min(self.upper, 1)
        return lo, hi

    def contains(self, p) -> bool:
        """True when ``p`` respects every applicable side."""
        if self.lower is not None and p < self.lower:
            return False
        if self.upper is not None and p > self.upper:
            return False
        return True

    def to_dict(self) -> dict:
        t = self.terms
        return {
            "base": self.base_term,
            "lower": self.lower,
            "upper": self.upper,
            "f": t.get("f"),
            "g": t.get("g"),
            "R": t.get("R"),
            "r": t.get("r"),
            "flags": dict(self.applicability),
            "log_lower": self.log_value.get("lower"),
            "log_upper": self.log_value.get("upper"),
        }


@dataclass
class LogBound:
    """A single upper bound in natural-log form.

    ``value`` is ``exp(log_value)`` unclamped; ``exact`` carries the rational
    value when requested. ``applicable`` is False when the conservative
    correction factor is out of range (``R > 1``).
    """

    mode: str
    log_value: Optional[float]
    applicable: bool = True
    exact: Optional[Fraction] = None
    R: Optional[float] = None

    @property
    def value(self) -> Optional[float]:
        if self.log_value is None:
            return None
        return math.exp(self.log_value)

    @property
    def clamped(self) -> Optional[float]:
        v = self.value
        return None if v is None else min(v, 1.0)


# ---------------------------------------------------------------------------
# helpers on (d, H1, H2)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _Constraint:
    dH1: list
    dH2: list
    h: int
    e2: int
    maxdeg2: int
    bmax: int


def _prepare(d: DegreeSequence, c: ConstraintPair, need_positive_m: bool = True) -> _Constraint:
    c.validate(d)
    dH1 = subgraph_degrees(c.H1)
    dH2 = subgraph_degrees(c.H2)
    h = c.H1.num_edges
    if need_positive_m and d.M - 2 * h <= 0:
        raise DegenerateDenominator(f"M - 2 e(H1) = {d.M - 2 * h} <= 0")
    bmax = max((d[x] for x in boundary(c.H1)), default=0)
    return _Constraint(dH1, dH2, h, c.H2.num_edges, max(dH2, default=0), bmax)


def _num(exact: bool):
    return Fraction(1) if exact else 1.0


# ---------------------------------------------------------------------------
# single edge
# ---------------------------------------------------------------------------

def conditional_edge_bounds(d: DegreeSequence, c: ConstraintPair, u: int, v: int, exact: bool = False) -> BoundReport:
    """Bounds on P(uv in G | H1 inside G, H2 disjoint from G).

    upper = base * f and lower = base * g with
    ``base = (d_u - d_u^{H1})(d_v - d_v^{H1}) / (M - 2 e(H1))``. The upper
    side needs ``1/f > 0`` and the lower side needs the first factor of
    ``g`` to be positive.
    """
    d.check_vertex(u)
    d.check_vertex(v)
    if u == v:
        raise InvalidConstraint("u and v must differ")
    k = _prepare(d, c)
    e = canon(u, v)
    if e in c.H1.edge_set or e in c.H2.edge_set:
        raise EdgeInConstraint(f"edge {u}-{v} belongs to H1 or H2")
    one = _num(exact)
    base, f_inv, g_first, g = conditional_terms(
        d.M, d.J, d.Delta, k.h, k.e2, k.maxdeg2,
        d[u] - k.dH1[u], d[v] - k.dH1[v], k.dH2[u], k.dH2[v], one,
    )
    f_ok = f_inv > 0
    g_ok = g_first > 0
    f = one / f_inv if f_inv != 0 else None
    upper = base * f if f_ok else None
    lower = base * g if g_ok else None
    return BoundReport(
        lower=lower,
        upper=upper,
        base_term=base,
        correction_lower=g,
        correction_upper=f,
        applicability={"f_denominator_positive": bool(f_ok), "g_factor_positive": bool(g_ok)},
        log_value={
            "lower": _log_pos(lower) if g_ok else None,
            "upper": _log_pos(upper) if f_ok else None,
        },
        terms={"f": f, "f_inverse": f_inv, "g": g, "g_first": g_first},
    )


# ---------------------------------------------------------------------------
# joint bounds
# ---------------------------------------------------------------------------

def falling_product(d: DegreeSequence, H: LabeledGraph) -> int:
    """prod_i (d_i)_{d_i^H}: the number of point-level matchings realising H."""
    out = 1
    for x, k in zip(d.labeled, subgraph_degrees(H)):
        out *= falling(x, k)
    return out


def log_falling_product(d: DegreeSequence, H: LabeledGraph) -> float:
    return math.fsum(log_falling(x, k) for x, k in zip(d.labeled, subgraph_degrees(H)) if k)


def joint_probability_bounds(d: DegreeSequence, c: ConstraintPair, exact: bool = False) -> BoundReport:
    """Bounds on P(H1 inside G | H2 disjoint from G).

    upper = prod (d_i)_{d_i^{H1}} * prod_{j=1}^{h} (1 + R) / (M - 2j + 2), valid
    when R <= 1; lower is the same with (1 - r), valid when r <= 1. Evaluated
    in log space; ``exact=True`` returns rationals instead of floats.
    """
    k = _prepare(d, c)
    one = _num(exact)
    R, r = joint_terms(d.M, d.J, d.Delta, k.h, k.e2, k.maxdeg2, k.bmax, one)
    R_ok = R <= 1
    r_ok = r <= 1
    h = k.h
    log_core = log_falling_product(d, c.H1) - _log_pair_product(d.M, h, 2)
    log_up = log_core + h * math.log1p(float(R))
    log_lo = log_core + h * math.log1p(-float(r)) if r < 1 else (0.0 if h == 0 else NEG_INF)
    if exact:
        core = Fraction(falling_product(d, c.H1), _pair_product(d.M, h, 2))
        upper_v = core * (1 + R) ** h
        lower_v = core * (1 - r) ** h
        corr_up, corr_lo = (1 + R) ** h, (1 - r) ** h
    else:
        upper_v, lower_v = math.exp(log_up), math.exp(log_lo)
        corr_up, corr_lo = (1 + R) ** h, (1 - r) ** h
        core = math.exp(log_core)
    return BoundReport(
        lower=lower_v if r_ok else None,
        upper=upper_v if R_ok else None,
        base_term=core,
        correction_lower=corr_lo,
        correction_upper=corr_up,
        applicability={"R_le_1": bool(R_ok), "r_le_1": bool(r_ok)},
        log_value={"lower": log_lo if r_ok else None, "upper": log_up if R_ok else None},
        terms={"R": R, "r": r},
    )


def subgraph_upper_bound(d: DegreeSequence, H: LabeledGraph, mode: str = "conservative", exact: bool = False) -> LogBound:
    """Upper bound on P(H inside G).

    ``idealized`` is the bare product prod (d_i)_{d_i^H} / prod (M - 2i + 2),
    the graph-side analogue of the configuration-model bound; it is an
    asymptotic statement and can sit below the true probability at small
    sizes. ``conservative`` is the joint upper bound with an empty forbidden
    graph and carries the explicit (1 + R) factors.
    """
    c = ConstraintPair(H, empty_graph(H.n))
    # the bare product only divides by M - 2i + 2 for i <= e(H), all positive
    k = _prepare(d, c, need_positive_m=(mode != "idealized"))
    if mode == "idealized":
        log_v = log_falling_product(d, H) - _log_pair_product(d.M, k.h, 2)
        ex = Fraction(falling_product(d, H), _pair_product(d.M, k.h, 2)) if exact else None
        return LogBound("idealized", log_v, True, ex)
    if mode == "conservative":
        rep = joint_probability_bounds(d, c, exact=exact)
        ok = rep.applicability["R_le_1"]
        return LogBound("conservative", rep.log_value["upper"], ok, rep.upper if exact else None, float(rep.terms["R"]))
    raise ValueError(f"unknown mode {mode!r}")


def cut_bound(d: DegreeSequence, S1: Iterable[int], S2: Iterable[int], ell: int, mode: str = "conservative",
              exact: bool = False) -> LogBound:
    """Upper bound on P(e(S1, S2) >= ell).

    binom(d(S1), ell) (d(S2))_ell prod_{i=1}^{ell} kappa / (M - 2i + 2) with
    kappa = 1 (idealized) or kappa = 1 + R for an ell-edge H1 and empty H2
    (conservative, applicable when R <= 1). The value may exceed 1.
    """
    if not 1 <= ell < d.M / 2:
        raise BadEll(f"ell={ell} outside 1 <= ell < M/2 = {d.M / 2}")
    dS1, _ = subset_stats(d, S1)
    dS2, _ = subset_stats(d, S2)
    log_v = log_binom(dS1, ell) + log_falling(dS2, ell) - _log_pair_product(d.M, ell, 2)
    core = Fraction(math.comb(dS1, ell) * falling(dS2, ell), _pair_product(d.M, ell, 2)) if exact else None
    if mode == "idealized":
        return LogBound("idealized", log_v, True, core)
    if mode == "conservative":
        R, _ = joint_terms(d.M, d.J, d.Delta, ell, 0, 0, 0, Fraction(1) if exact else 1.0)
        ok = R <= 1
        lv = log_v + ell * math.log1p(float(R)) if log_v != NEG_INF else NEG_INF
        ex = core * (1 + R) ** ell if exact else None
        return LogBound("conservative", lv if ok else None, bool(ok), ex if ok else None, float(R))
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# configuration model
# ---------------------------------------------------------------------------

def config_model_subgraph_bound(d: DegreeSequence, H: LabeledGraph, exact: bool = False) -> LogBound:
    """prod (d_i)_{d_i^H} / prod_{i=1}^{e(H)} (M - 2i + 1): P(H inside G*) in the pairing model."""
    c = ConstraintPair(H, empty_graph(H.n))
    k = _prepare(d, c, need_positive_m=False)
    log_v = log_falling_product(d, H) - _log_pair_product(d.M, k.h, 1)
    ex = Fraction(falling_product(d, H), _pair_product(d.M, k.h, 1)) if exact else None
    return LogBound("config_model", log_v, True, ex)


def config_model_cut_bound(d: DegreeSequence, S1, S2, ell: int, exact: bool = False) -> LogBound:
    if not 1 <= ell < d.M / 2:
        raise BadEll(f"ell={ell} outside 1 <= ell < M/2 = {d.M / 2}")
    dS1, _ = subset_stats(d, S1)
    dS2, _ = subset_stats(d, S2)
    log_v = log_binom(dS1, ell) + log_falling(dS2, ell) - _log_pair_product(d.M, ell, 1)
    ex = Fraction(math.comb(dS1, ell) * falling(dS2, ell), _pair_product(d.M, ell, 1)) if exact else None
    return LogBound("config_model", log_v, True, ex)


def pairing_count_upper(d) -> Fraction:
    """M! / (2^{M/2} (M/2)! prod d_i!) as an exact rational."""
    degrees = d.labeled if isinstance(d, DegreeSequence) else tuple(int(x) for x in d)
    M = sum(degrees)
    if M % 2:
        raise OddSum(f"degree sum {M} is odd")
    den = 2 ** (M // 2) * math.factorial(M // 2)
    for x in degrees:
        den *= math.factorial(x)
    return Fraction(math.factorial(M), den)


def total_pairings(M: int) -> int:
    """(M - 1)!! = M! / (2^{M/2} (M/2)!)."""
    return math.factorial(M) // (2 ** (M // 2) * math.factorial(M // 2))
