import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from pfkit.errors import GraphError
from pfkit.fixtures import builtin
from pfkit.gf2 import GF2System, solve
from pfkit.graph import EdgeCycle, Graph, Orientation, edge, edge_sum, subdivide_edge
from pfkit.matching import _cycle_components, alternating_circuits, enumerate_one_factors
from pfkit.pfaffian import (
    EVEN,
    ODD,
    brute_force_pfaffian_orientation,
    clockwise_parity,
    contract_degree2,
    factor_sign,
    find_intractable_set,
    find_pfaffian_orientation,
    is_clockwise_even,
    is_pfaffian,
    is_pfaffian_orientation,
    sign_table,
)

from conftest import random_orientation
from test_graph import complete, cycle_graph, graphs


def components(es):
    return [EdgeCycle.from_edges(c) for c in _cycle_components(frozenset(es))]


# -- GF(2) --------------------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.lists(st.tuples(st.integers(0, 63), st.integers(0, 1)), max_size=8))
def test_gf2_against_exhaustive(nvars, rows):
    rows = [(m & ((1 << nvars) - 1), r) for m, r in rows]
    sols = [x for x in range(1 << nvars) if all(bin(m & x).count("1") % 2 == r for m, r in rows)]
    sys_ = GF2System(nvars)
    for m, r in rows:
        sys_.add(m, r)
    x = sys_.solution()
    if sols:
        assert x in sols
        assert sys_.certificate() == []
    else:
        assert x is None
        cert = sys_.certificate()
        acc_m = acc_r = 0
        for i in cert:
            acc_m ^= rows[i][0]
            acc_r ^= rows[i][1]
        assert acc_m == 0 and acc_r == 1
    assert (solve(rows, nvars) is None) == (not sols)


# -- signs ------------------------------------------------------------------------------


def test_k2_single_row():
    g = Graph.from_edges([(0, 1)])
    t = sign_table(g, Orientation.default(g))
    assert t.signs == [1]


def test_factor_sign_of_base_is_plus():
    fx = builtin("gamma1")
    for f in fx.factors:
        assert factor_sign(fx.orientation, f, f) == 1


@pytest.mark.parametrize("name", ["k33", "gamma1", "gamma2", "gamma1_sec6", "gamma2_sec6"])
def test_base_independence(name):
    fx = builtin(name)
    parts = {sign_table(fx.graph, fx.orientation, base=b).partition() for b in fx.factors}
    assert len(parts) == 1


@pytest.mark.parametrize("name", ["k33", "gamma1", "gamma2"])
def test_single_edge_flip_negates_containing_factors(name):
    fx = builtin(name)
    g, o = fx.graph, fx.orientation
    base = fx.factors[0]
    before = dict(sign_table(g, o, base=base).rows)
    for e in g.sorted_edges:
        after = dict(sign_table(g, o.reverse(e), base=base).rows)
        for f in fx.factors:
            # signs are relative to the base, which may itself contain e
            flipped = (e in f) != (e in base)
            assert after[f] == (-before[f] if flipped else before[f])


def test_sign_equals_clockwise_even_count(census6):
    rng = random.Random(3)
    for g in census6:
        o = random_orientation(g, rng)
        fs = enumerate_one_factors(g)
        for f, h in itertools.combinations(fs, 2):
            k = sum(is_clockwise_even(c, o) for c in components(edge_sum(f, h)))
            assert factor_sign(o, f, h) == (-1) ** k


# -- clockwise parity -----------------------------------------------------------------------


def test_clockwise_parity_examples():
    c = EdgeCycle((0, 1, 2, 3))
    g = cycle_graph(4)
    o = Orientation.from_arcs([(0, 1), (1, 2), (2, 3), (3, 0)])
    assert clockwise_parity(c, o) == EVEN
    assert clockwise_parity(c, o.reverse((0, 1))) == ODD
    assert clockwise_parity(c.reversed(), o) == EVEN
    with pytest.raises(GraphError):
        clockwise_parity(EdgeCycle((0, 1, 2)), Orientation.default(complete(3)))
    assert is_pfaffian_orientation(g, o.reverse((0, 1)))
    assert not is_pfaffian_orientation(g, o)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32))
def test_sense_reversal_keeps_even_parity(half, seed):
    rng = random.Random(seed)
    vs = list(range(2 * half))
    rng.shuffle(vs)
    c = EdgeCycle(tuple(vs))
    g = Graph.from_edges(c.edges)
    o = random_orientation(g, rng)
    assert clockwise_parity(c, o) == clockwise_parity(c.reversed(), o)


def test_k33_table_circuits_match_signs():
    fx = builtin("k33")
    rows = fx.table
    f1 = rows[0][0]
    for f, s in rows[1:]:
        (c,) = components(edge_sum(f1, f))
        # a single alternating circuit: minus iff clockwise even
        assert (s == -1) == is_clockwise_even(c, fx.orientation)


def test_opposite_parity_pairs_exhaustive(census8):
    rng = random.Random(5)
    checked = 0
    for g in census8[::7]:
        o = random_orientation(g, rng)
        for f in enumerate_one_factors(g)[:2]:
            acs = alternating_circuits(g, f, check=False)
            for a1, a2 in itertools.combinations(acs, 2):
                k = sum(is_clockwise_even(c, o) for c in components(edge_sum(a1.switched(), a2.switched())))
                opposite = clockwise_parity(a1.cycle, o) != clockwise_parity(a2.cycle, o)
                assert opposite == (k % 2 == 1)
                checked += 1
    assert checked > 1000


@pytest.mark.parametrize("name", ["k33", "gamma1", "gamma2"])
def test_triple_circuit_parity_on_fixtures(name):
    fx = builtin(name)
    g = fx.graph
    rng = random.Random(11)
    fs = fx.factors
    for f1, f2, f3 in itertools.islice(itertools.combinations(fs, 3), 40):
        cs = components(edge_sum(f1, f2)) + components(edge_sum(f2, f3)) + components(edge_sum(f3, f1))
        assert not edge_sum(*(c.edges for c in cs))
        parities = set()
        for _ in range(6):
            o = random_orientation(g, rng)
            parities.add(sum(is_clockwise_even(c, o) for c in cs) % 2)
        assert len(parities) == 1


# -- deciders ------------------------------------------------------------------------------------


def test_known_decisions():
    assert is_pfaffian(Graph.from_edges([(0, 1)]))
    assert is_pfaffian(cycle_graph(4))
    assert is_pfaffian(cycle_graph(6))
    assert is_pfaffian(complete(4))
    for name in ("k33", "gamma1", "gamma2"):
        assert not is_pfaffian(builtin(name).graph)
    assert find_pfaffian_orientation(builtin("k33").graph) is None
    o = find_pfaffian_orientation(complete(4))
    assert is_pfaffian_orientation(complete(4), o)


def test_graph_without_factor_is_pfaffian():
    assert is_pfaffian(cycle_graph(5))


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=8, connected=True))
def test_decider_agrees_with_brute_force(g):
    a = find_pfaffian_orientation(g)
    b = brute_force_pfaffian_orientation(g)
    assert (a is None) == (b is None)
    if b is not None and enumerate_one_factors(g):
        assert is_pfaffian_orientation(g, b)


def test_gamma1_minus_de_recipe():
    fx = builtin("gamma1_sec6")
    g = fx.graph.delete_edges([fx.edge_of("de")])
    o = fx.orientation.restrict(g.edges).reverse(fx.edge_of("lf"))
    assert is_pfaffian_orientation(g, o)


def test_even_subdivisions_of_gamma1_not_pfaffian():
    g = builtin("gamma1").graph
    for e in g.sorted_edges:
        assert not is_pfaffian(subdivide_edge(g, e, 3))
        assert not is_pfaffian(subdivide_edge(g, e, 5))


# -- intractable sets -----------------------------------------------------------------------------


def test_intractable_sets():
    c4 = cycle_graph(4)
    assert find_intractable_set(c4, Orientation.default(c4)) is None
    for name in ("k33", "gamma1", "gamma2"):
        fx = builtin(name)
        s = find_intractable_set(fx.graph, fx.orientation)
        assert s is not None and s.is_valid()
        for c, f in zip(s.circuits, s.factors):
            assert c.edges - f and len(c.edges & f) * 2 == len(c)


def test_no_intractable_set_for_pfaffian_census(census6):
    rng = random.Random(2)
    for g in census6:
        o = random_orientation(g, rng)
        s = find_intractable_set(g, o)
        assert (s is None) == is_pfaffian(g)


# -- degree-2 contraction ---------------------------------------------------------------------------


def test_contract_degree2_inverse_of_subdivision():
    g = builtin("k33").graph
    h = subdivide_edge(g, (0, 1), 3)
    new = [v for v in h.vertices if v not in g.vertices]
    assert contract_degree2(h, new[0]).n == 6
    assert contract_degree2(h, new[0]).m == 9
    with pytest.raises(GraphError):
        contract_degree2(g, 0)


def test_contract_degree2_c6():
    h = contract_degree2(cycle_graph(6), 1)
    assert h.n == 4 and h.m == 4
    assert is_pfaffian(h) and is_pfaffian(cycle_graph(6))
