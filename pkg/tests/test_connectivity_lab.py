import csv
import io
import math

import numpy as np
import pytest

from degseq_lab import events
from degseq_lab.connectivity_lab import (
    CSV_FIELDS,
    FamilySpec,
    SweepRow,
    base_family,
    connectivity_sweep,
    edges_connected,
    heavy_component_check,
    isolated_edges_fast,
    isolated_triangles_fast,
    moment_experiment,
    regular_sequence,
    rows_to_csv,
    rows_to_json,
    solve_counts,
    star_heavy_family,
    theory_columns,
)
from degseq_lab.degree_core import heavy_set, make_sequence
from degseq_lab.errors import PreconditionViolated
from degseq_lab.graph_core import LabeledGraph, count_isolated_edges, count_isolated_triangles, is_connected
from degseq_lab.oracle import enumerate_graphs
from degseq_lab.sampler import estimate_event, sample_simple_edges
from degseq_lab.seeding import stream


def test_family_generators():
    d = base_family(3000, n1=200)
    assert d.stats.n1 == 200 and d.stats.n2 == 0 and d.M % 2 == 0
    assert sorted(set(d.labeled)) in ([1, 3], [1, 3, 4])
    n1, n2 = solve_counts(2000, 5.0, 0.0)
    M = 3 * (2000 - n1) + n1
    assert n1 == round(5.0 * math.sqrt(M))
    d = base_family(3000, c2=0.3)
    assert d.stats.n2 == round(0.3 * d.M) or d.stats.n2 == round(0.3 * (d.M - 1))
    # parity fixed by bumping exactly one base vertex to 4
    d = base_family(11)
    assert d.labeled.count(4) == 1 and d.M % 2 == 0
    assert regular_sequence(10, 3).labeled == (3,) * 10
    s = star_heavy_family(500)
    assert s.Delta == math.ceil(math.sqrt(s.M))


def test_family_spec_points():
    spec = FamilySpec("base3_plus_ones", 100, c1=[0, 1, 2])
    assert spec.points() == [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]
    with pytest.raises(ValueError):
        FamilySpec("bogus")


def test_theory_columns_are_pure():
    t = theory_columns(200, 50, 8000)
    assert t["theory_Y"] == 200**2 / (2 * 8000)
    assert t["theory_YY"] == 200**4 / (4 * 8000**2)
    assert t["theory_Z"] == 4 * 50**3 / (3 * 8000**3)
    assert t["theory_ZZ"] == 16 * 50**6 / (9 * 8000**6)


def test_moment_examples():
    row = moment_experiment(make_sequence([1, 1, 1, 1]), 100, 1)
    assert row.mean_Y == 2.0 and row.theory_Y == 16 / 8
    row = moment_experiment(regular_sequence(60, 3), 100, 2)
    assert row.mean_Y == 0 and row.theory_Y == 0


def test_moment_y_within_tolerance_large():
    row = moment_experiment(base_family(3000, n1=200), 2000, 3)
    assert abs(row.mean_Y / row.theory_Y - 1) <= 0.15


def test_fast_observables_match_graph_core():
    # two implementations: vertex scans in graph_core, edge-array scans here
    rng = stream(21)
    for degs in ([1] * 10 + [2] * 12 + [3] * 8, [2] * 30, [1] * 20 + [3] * 10):
        d = make_sequence(degs)
        deg = d.as_array()
        for _ in range(2000 if degs[0] == 2 else 500):
            e, _ = sample_simple_edges(d, rng)
            G = LabeledGraph(d.n, tuple(map(tuple, e.tolist())))
            assert isolated_edges_fast(e, deg) == count_isolated_edges(G, d)
            assert isolated_triangles_fast(e, deg) == count_isolated_triangles(G, d)
            assert edges_connected(e, d.n) == is_connected(G)


def test_fast_observables_exhaustive_small():
    d = make_sequence([2, 2, 2, 2, 2, 2, 1, 1])
    deg = d.as_array()
    for G in enumerate_graphs(d, store_cap=10**6).graphs:
        e = np.array(G.edges)
        assert isolated_triangles_fast(e, deg) == count_isolated_triangles(G, d)
        assert isolated_edges_fast(e, deg) == count_isolated_edges(G, d)


def test_sweep_rows_and_csv():
    spec = FamilySpec("base3_plus_ones", 300, c1=[0, 2])
    rows = connectivity_sweep(spec, 50, 4)
    assert len(rows) == 2 and not any(r.failed for r in rows)
    text = rows_to_csv(rows)
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert tuple(parsed[0]) == CSV_FIELDS
    for r, p in zip(rows, parsed):
        assert float(p["theory_Y"]) == theory_columns(r.n1, r.n2, r.M)["theory_Y"]
        assert float(p["p_connected"]) == r.p_connected
    assert [list(x) for x in rows_to_json(rows)] == [list(CSV_FIELDS)] * 2
    assert rows_to_csv(connectivity_sweep(spec, 50, 4)) == text


def test_sweep_marks_failed_rows():
    spec = FamilySpec("base3_plus_ones", 50, c1=[0, 40])
    rows = connectivity_sweep(spec, 10, 5)
    assert not rows[0].failed and rows[1].failed and rows[1].error
    spec = FamilySpec("custom", degrees=[2, 2, 2, 2, 2, 2], c1=[0])
    rows = connectivity_sweep(spec, 10, 5, max_tries=1)
    assert rows[0].failed and "no simple pairing" in rows[0].error
    assert "1" == rows_to_csv(rows).splitlines()[1].split(",")[-1]


def test_heavy_singleton_is_certain():
    d = make_sequence([50] + [1] * 150)
    assert heavy_set(d) == {0}
    est = heavy_component_check(d, 50, 6)
    assert est.point_estimate == 1.0


def test_heavy_all_vertices_equals_connectivity():
    # for cubic sequences the threshold sqrt(3n)/ln(3n) stays at most 3 up to n = 89
    d = regular_sequence(80, 3)
    assert heavy_set(d) == frozenset(range(80))
    h = heavy_component_check(d, 400, 7)
    c = estimate_event(d, events.connected, 400, 7)
    assert h.total == c.total


def test_heavy_empty_rejected():
    with pytest.raises(PreconditionViolated):
        heavy_component_check(regular_sequence(100, 3), 10, 8)


def test_star_heavy_family_connects():
    est = heavy_component_check(star_heavy_family(500), 1000, 9)
    assert est.point_estimate >= 0.95


def test_cubic_connected_at_five_hundred():
    rows = connectivity_sweep(FamilySpec("regular", 500), 500, 10)
    assert rows[0].p_connected >= 0.99


def test_row_to_dict_roundtrip():
    r = SweepRow(0.0, 0.0, 10, 30, 0, 0, 5)
    assert set(CSV_FIELDS) <= set(r.to_dict())
