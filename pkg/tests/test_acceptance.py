"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line."""

import itertools
import random
import time
from collections import Counter

import pytest

from pfkit.census import CONNECTED_COUNTS, connected_graphs, random_connected_graph, random_near_bipartite_candidate
from pfkit.characterize import check_main_theorem, find_even_subdivision_subgraph, is_reducible_to_even_subdivision
from pfkit.fixtures import GAMMA1_RECIPES, GAMMA2_RECIPES, builtin
from pfkit.graph import Graph, edge_sum, subdivide_edge
from pfkit.matching import _cycle_components, alternating_circuits, central_circuits, enumerate_one_factors
from pfkit.graph import EdgeCycle
from pfkit.nearbip import find_near_bipartite_pairs
from pfkit.pfaffian import (
    brute_force_pfaffian_orientation,
    clockwise_parity,
    contract_degree2,
    factor_sign,
    find_pfaffian_orientation,
    is_clockwise_even,
    is_pfaffian,
    is_pfaffian_orientation,
    sign_table,
)

from conftest import random_orientation
from test_graph import complete, cycle_graph


def components(es):
    return [EdgeCycle.from_edges(c) for c in _cycle_components(frozenset(es))]


def even_subdivisions(g):
    """Every even subdivision adding total path length at most 4."""
    es = g.sorted_edges
    for e in es:
        yield f"{g.fmt_edge(e)}x3", subdivide_edge(g, e, 3)
        yield f"{g.fmt_edge(e)}x5", subdivide_edge(g, e, 5)
    for e, f in itertools.combinations(es, 2):
        yield f"{g.fmt_edge(e)}x3+{g.fmt_edge(f)}x3", subdivide_edge(subdivide_edge(g, e, 3), f, 3)


def test_ac1_k33_sign_table(record):
    t0 = time.perf_counter()
    fx = builtin("k33")
    table = sign_table(fx.graph, fx.orientation, base=fx.table[0][0])
    got = dict(table.rows)
    rows = [f for f, _ in fx.table]
    signs = [got[f] for f in rows]
    elapsed = time.perf_counter() - t0
    ok = set(rows) == set(got) and len(rows) == 6 and signs == [1, -1, 1, -1, 1, -1] and elapsed < 1
    record("AC1", ok, f"K3,3 signs {signs}, {elapsed:.3f}s")
    assert ok


def test_ac2_gamma_sign_tables(record):
    t0 = time.perf_counter()
    details = []
    ok = True
    for name in ("gamma1", "gamma2"):
        fx = builtin(name)
        rows = [f for f, _ in fx.table]
        cover = Counter(e for f in rows for e in f)
        twice = set(cover) == fx.graph.edges and set(cover.values()) == {2}
        signs = [factor_sign(fx.orientation, rows[0], f) for f in rows]
        split = Counter(signs) == Counter({1: 3, -1: 3})
        printed = signs == fx.expected_signs
        ok &= twice and split and printed
        details.append(f"{name}: cover-twice={twice} split={signs.count(1)}/{signs.count(-1)}")
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 1
    record("AC2", ok, "; ".join(details) + f", {elapsed:.3f}s")
    assert ok


def test_ac3_reoriented_sign_statements(record):
    g1 = builtin("gamma1_sec6")
    s1 = dict(sign_table(g1.graph, g1.orientation, base=g1.factors[0]).rows)
    signs1 = [s1[f] for f in g1.factors]
    g2 = builtin("gamma2_sec6")
    s2 = dict(sign_table(g2.graph, g2.orientation, base=g2.factors[0]).rows)
    signs2 = [s2[f] for f in g2.factors]
    ok1 = signs1[:9] == [signs1[0]] * 9 and signs1[9] == -signs1[0] and signs1[0] == 1
    ok2 = len(set(signs2[1:])) == 1 and signs2[0] == -signs2[1]
    fmt = lambda s: "".join("+" if x > 0 else "-" for x in s)
    record("AC3", ok1 and ok2, f"gamma1 {fmt(signs1)}, gamma2 {fmt(signs2)}")
    assert ok1 and ok2


def test_ac4_factor_counts(record):
    k = len(enumerate_one_factors(builtin("k33").graph))
    res = {}
    for name in ("gamma1", "gamma2"):
        fx = builtin(name)
        fs = enumerate_one_factors(fx.graph)
        res[name] = (len(fs), set(fs) == set(fx.factors))
    ok = k == 6 and all(n == 10 and same for n, same in res.values())
    record("AC4", ok, f"K3,3 {k}, " + ", ".join(f"{n} {c} (equal to list: {s})" for n, (c, s) in res.items()))
    assert ok


def test_ac5_pfaffian_decisions(record):
    worst = 0.0
    wrong = []
    count = 0

    def decide(label, g, expect):
        nonlocal worst, count
        t0 = time.perf_counter()
        got = is_pfaffian(g)
        worst = max(worst, time.perf_counter() - t0)
        count += 1
        if got != expect:
            wrong.append(label)

    for name in ("k33", "gamma1", "gamma2"):
        g = builtin(name).graph
        decide(name, g, False)
        for label, h in even_subdivisions(g):
            decide(f"{name}:{label}", h, False)
    decide("C4", cycle_graph(4), True)
    decide("C6", cycle_graph(6), True)
    decide("K4", complete(4), True)
    ok = not wrong and worst < 10
    record("AC5", ok, f"{count} decisions, {len(wrong)} wrong, slowest {worst:.3f}s")
    assert ok, wrong[:5]


def test_ac6_minimality(record):
    t0 = time.perf_counter()
    bad = []
    for name, recipes in (("gamma1", GAMMA1_RECIPES), ("gamma2", GAMMA2_RECIPES)):
        fx = builtin(f"{name}_sec6")
        g, o = fx.graph, fx.orientation
        for e in g.sorted_edges:
            if not is_pfaffian(g.delete_edges([e])):
                bad.append(f"{name}-{g.fmt_edge(e)}")
        for x, flips in recipes.items():
            h = g.delete_edges([fx.edge_of(x)])
            ho = o.restrict(h.edges).reverse(*(fx.edge_of(p) for p in flips))
            if not is_pfaffian_orientation(h, ho):
                bad.append(f"{name} recipe {x}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 300
    record("AC6", ok, f"36 deletions + {len(GAMMA1_RECIPES) + len(GAMMA2_RECIPES)} recipes, {len(bad)} failures, {elapsed:.1f}s")
    assert ok, bad


def test_ac7_no_k33_subdivision_or_reduction(record):
    t0 = time.perf_counter()
    found = {}
    for name in ("gamma1", "gamma2"):
        g = builtin(name).graph
        sub = find_even_subdivision_subgraph(g, "k33", budget=10**8)
        red = is_reducible_to_even_subdivision(
            g, "k33", max_depth=None, budget=10**8, chordless_only=False, prune_pfaffian=False
        )
        found[name] = (sub is None, red is None)
    elapsed = time.perf_counter() - t0
    ok = all(a and b for a, b in found.values()) and elapsed < 600
    record("AC7", ok, f"no subdivision / no reduction: {found}, {elapsed:.1f}s")
    assert ok


def test_ac8_oracle_equivalence(record, census8):
    t0 = time.perf_counter()
    counts_ok = all(len(connected_graphs(n)) == CONNECTED_COUNTS[n] for n in range(1, 9))
    mismatches = 0
    pfaffian = 0
    for g in census8:
        a = find_pfaffian_orientation(g) is not None
        b = brute_force_pfaffian_orientation(g) is not None
        mismatches += a != b
        pfaffian += a
    elapsed = time.perf_counter() - t0
    ok = counts_ok and mismatches == 0 and elapsed < 1800
    record("AC8", ok, f"{len(census8)} graphs, {pfaffian} Pfaffian, {mismatches} mismatches, census counts ok={counts_ok}, {elapsed:.1f}s")
    assert ok


def test_ac9_kasteleyn_parity_orient(record, census8):
    rng = random.Random(9)
    kasteleyn_bad = parity_bad = orient_bad = 0
    orientations = parity_pairs = orient_sets = 0
    for g in census8:
        o_list = [random_orientation(g, rng)]
        o_pf = find_pfaffian_orientation(g)
        if o_pf is not None:
            o_list.append(o_pf)
        circuits = central_circuits(g)
        for o in o_list:
            orientations += 1
            by_signs = sign_table(g, o).is_constant()
            by_circuits = all(clockwise_parity(c, o) == 1 for c in circuits)
            kasteleyn_bad += by_signs != by_circuits
        o = o_list[0]
        fs = enumerate_one_factors(g)
        acs = alternating_circuits(g, fs[0], check=False)
        for a1, a2 in itertools.combinations(acs, 2):
            k = sum(is_clockwise_even(c, o) for c in components(edge_sum(a1.switched(), a2.switched())))
            opposite = clockwise_parity(a1.cycle, o) != clockwise_parity(a2.cycle, o)
            parity_bad += opposite != (k % 2 == 1)
            parity_pairs += 1
        for f1, f2, f3 in itertools.islice(itertools.combinations(fs, 3), 3):
            cs = components(edge_sum(f1, f2)) + components(edge_sum(f2, f3)) + components(edge_sum(f3, f1))
            o2 = random_orientation(g, rng)
            p1 = sum(is_clockwise_even(c, o) for c in cs) % 2
            p2 = sum(is_clockwise_even(c, o2) for c in cs) % 2
            orient_bad += p1 != p2
            orient_sets += 1
    ok = kasteleyn_bad == parity_bad == orient_bad == 0
    record(
        "AC9",
        ok,
        f"Kasteleyn {orientations} orientations/{kasteleyn_bad} bad; parity {parity_pairs} pairs/{parity_bad} bad; "
        f"orient {orient_sets} sets/{orient_bad} bad",
    )
    assert ok


def test_ac10_degree2_contraction(record):
    rng = random.Random(10)
    checked = violations = 0
    while checked < 1000:
        n = rng.randint(3, 10)
        g = random_connected_graph(rng, n, rng.uniform(0.1, 0.5))
        deg2 = [v for v in g.vertices if g.degree(v) == 2]
        if not deg2:
            continue
        v = rng.choice(deg2)
        violations += is_pfaffian(g) != is_pfaffian(contract_degree2(g, v))
        checked += 1
    record("AC10", violations == 0, f"{checked} graphs, {violations} violations")
    assert violations == 0


def _main_theorem_corpus():
    for name in ("gamma1", "gamma2"):
        g = builtin(name).graph
        yield name, g
        for e in g.sorted_edges:
            yield f"{name}:{g.fmt_edge(e)}x3", subdivide_edge(g, e, 3)
    rng = random.Random(11)
    for i in range(400):
        g = random_near_bipartite_candidate(rng, rng.randint(2, 5), rng.uniform(0.3, 0.8))
        yield f"nb{i}", g
    for i in range(400):
        g = random_connected_graph(rng, rng.choice([4, 6, 8, 10]), rng.uniform(0.3, 0.7))
        yield f"rg{i}", g


def test_ac11_main_theorem_bounded(record):
    t0 = time.perf_counter()
    total = pf = violations = inconclusive = flagged = 0
    seen = set()
    for label, g in _main_theorem_corpus():
        if (g.vertices, g.edges) in seen or not find_near_bipartite_pairs(g):
            continue
        seen.add((g.vertices, g.edges))
        rep = check_main_theorem(g)
        total += 1
        pf += rep.pfaffian
        inconclusive += rep.inconclusive
        flagged += rep.flagged
        if rep.consistent is not True:
            violations += 1
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and total >= 50
    record(
        "AC11",
        ok,
        f"{total} near-bipartite graphs ({pf} Pfaffian), {violations} violations, {inconclusive} inconclusive, "
        f"{flagged} witnesses with merged edges, {elapsed:.1f}s",
    )
    assert ok
