import pytest

from pfkit.errors import GraphError
from pfkit.fixtures import BUILTINS, builtin, target_graph
from pfkit.graph import girth
from pfkit.matching import enumerate_one_factors
from pfkit.pfaffian import sign_table
from pfkit.verify import (
    verify_non_reduction,
    verify_deciders,
    verify_sign_tables,
    verify_fixture_lists,
    verify_minimality,
    verify_paper,
)


@pytest.mark.parametrize("name", BUILTINS)
def test_fixture_self_consistency(name):
    fx = builtin(name)
    assert set(enumerate_one_factors(fx.graph)) == set(fx.factors)
    fx.orientation.check_host(fx.graph)
    rows = dict(sign_table(fx.graph, fx.orientation, base=fx.table[0][0]).rows)
    assert [rows[f] for f, _ in fx.table] == fx.expected_signs


@pytest.mark.parametrize("name", ["gamma1", "gamma2"])
def test_shape(name):
    g = builtin(name).graph
    assert (g.n, g.m) == (12, 18)
    assert set(g.degrees().values()) == {3}
    assert girth(g) >= 4


def test_both_orientations_share_the_graph():
    assert builtin("gamma1").graph == builtin("gamma1_sec6").graph
    assert builtin("gamma2").graph == builtin("gamma2_sec6").graph
    assert builtin("gamma1").orientation != builtin("gamma1_sec6").orientation


def test_unknown_names():
    with pytest.raises(GraphError):
        builtin("petersen")
    with pytest.raises(GraphError):
        target_graph("gamma1_sec6")


def test_reports_green():
    for rep in (verify_sign_tables(), verify_fixture_lists(), verify_minimality("gamma1"), verify_minimality("gamma2")):
        assert rep.ok, "\n".join(rep.lines())


def test_non_reduction_report():
    rep = verify_non_reduction()
    assert rep.ok and len(rep.checks) == 8


def test_decider_report():
    assert verify_deciders(4).ok


def test_full_runner_covers_every_report():
    titles = [r.title for r in verify_paper(census_n=4)]
    assert titles[0] == "sign tables"
    assert sum("minimality" in t for t in titles) == 2
    assert any("non-reduction" in t for t in titles) and any("decider" in t for t in titles)
