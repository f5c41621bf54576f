"""Executable checks of the claims attached to the built-in fixtures."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .census import matchable_census
from .characterize import find_even_subdivision_subgraph, is_reducible_to_even_subdivision
from .errors import BudgetExceeded
from .fixtures import (
    GAMMA1_RECIPES,
    GAMMA2_RECIPES,
    builtin,
)
from .graph import girth
from .matching import enumerate_one_factors
from .pfaffian import (
    brute_force_pfaffian_orientation,
    factor_sign,
    find_pfaffian_orientation,
    is_pfaffian,
    is_pfaffian_orientation,
    sign_table,
)


@dataclass
class Report:
    title: str
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, what: str, ok: bool, detail: str = "") -> None:
        self.checks.append((what, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        out = [f"== {self.title}"]
        for what, ok, detail in self.checks:
            out.append(f"[{'PASS' if ok else 'FAIL'}] {what}" + (f"  ({detail})" if detail else ""))
        return out

    def to_json(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": [{"check": w, "ok": ok, "detail": d} for w, ok, d in self.checks],
        }


def verify_sign_tables() -> Report:
    """Printed sign tables: row signs, edge coverage exactly twice, 3/3 split."""
    rep = Report("sign tables")
    for name in ("k33", "gamma1", "gamma2"):
        fx = builtin(name)
        g, o = fx.graph, fx.orientation
        rows = [f for f, _ in fx.table]
        base = rows[0]
        got = [factor_sign(o, base, f) for f in rows]
        rep.add(f"{name}: printed signs reproduced", got == fx.expected_signs, f"{got}")
        cover = Counter(e for f in rows for e in f)
        rep.add(
            f"{name}: every edge in exactly two listed factors",
            set(cover) == set(g.edges) and set(cover.values()) == {2},
        )
        plus = got.count(1)
        minus = got.count(-1)
        rep.add(f"{name}: odd number of each sign", plus % 2 == 1 and minus % 2 == 1, f"{plus}+ / {minus}-")
    fx = builtin("k33")
    rep.add("k33: the table lists all 1-factors", set(enumerate_one_factors(fx.graph)) == set(f for f, _ in fx.table))
    return rep


def verify_fixture_lists() -> Report:
    """Factor lists equal fresh enumeration; stated signs under the second orientations."""
    rep = Report("factor lists and signs")
    for name in ("k33", "gamma1", "gamma2", "gamma1_sec6", "gamma2_sec6"):
        fx = builtin(name)
        g = fx.graph
        fresh = enumerate_one_factors(g)
        rep.add(f"{name}: {len(fresh)} factors, equal to the printed list", set(fresh) == set(fx.factors) and len(fresh) == len(fx.factors))
        rep.add(f"{name}: cubic on {g.n} vertices with {g.m} edges", set(g.degrees().values()) == {3})
    for name in ("gamma1_sec6", "gamma2_sec6"):
        fx = builtin(name)
        table = sign_table(fx.graph, fx.orientation, base=fx.factors[0])
        got = dict(table.rows)
        signs = [got[f] for f in fx.factors]
        rep.add(f"{name}: stated signs", signs == fx.expected_signs, "".join("+" if s > 0 else "-" for s in signs))
    return rep


def verify_minimality(name: str) -> Report:
    """G is non-Pfaffian, every single-edge deletion is Pfaffian, recipes validate."""
    fx = builtin(f"{name}_sec6")
    g, o = fx.graph, fx.orientation
    rep = Report(f"minimality of {name}")
    rep.add(f"{name} is not Pfaffian", not is_pfaffian(g))
    bad = [g.fmt_edge(e) for e in g.sorted_edges if not is_pfaffian(g.delete_edges([e]))]
    rep.add(f"{name} - x is Pfaffian for all {g.m} edges x", not bad, ", ".join(bad))
    recipes = GAMMA1_RECIPES if name == "gamma1" else GAMMA2_RECIPES
    for x, flips in recipes.items():
        h = g.delete_edges([fx.edge_of(x)])
        ho = o.restrict(h.edges).reverse(*(fx.edge_of(p) for p in flips))
        rep.add(f"{name} - ({x[0]},{x[1]}): reversing {', '.join(flips)} gives a Pfaffian orientation", is_pfaffian_orientation(h, ho))
    # the factor with the odd sign out: deleting any of its edges leaves a constant sign table
    odd = fx.factors[9] if name == "gamma1" else fx.factors[0]
    for e in sorted(odd):
        h = g.delete_edges([e])
        rep.add(f"{name} - {g.fmt_edge(e)}: unmodified orientation is Pfaffian", is_pfaffian_orientation(h, o.restrict(h.edges)))
    return rep


def verify_non_reduction(budget: int = 10**7) -> Report:
    rep = Report("non-reduction")
    for name in ("gamma1", "gamma2"):
        g = builtin(name).graph
        rep.add(f"{name} is cubic", set(g.degrees().values()) == {3})
        gi = girth(g)
        rep.add(f"{name} has no circuit of length 3", gi is not None and gi >= 4, f"girth {gi}")
        try:
            sub = find_even_subdivision_subgraph(g, "k33", budget=budget)
            rep.add(f"{name} contains no even subdivision of K3,3", sub is None)
        except BudgetExceeded as exc:
            rep.add(f"{name} contains no even subdivision of K3,3", False, str(exc))
        try:
            red = is_reducible_to_even_subdivision(
                g, "k33", max_depth=None, budget=budget, chordless_only=False, prune_pfaffian=False
            )
            rep.add(f"{name} is not reducible to an even subdivision of K3,3", red is None)
        except BudgetExceeded as exc:
            rep.add(f"{name} is not reducible to an even subdivision of K3,3", False, str(exc))
    return rep


def verify_deciders(max_n: int = 6) -> Report:
    """GF(2) decider against the brute-force oracle on fixtures, their edge deletions and a census."""
    rep = Report(f"decider agreement (fixtures and connected graphs up to {max_n} vertices)")
    graphs = []
    for name in ("k33", "gamma1", "gamma2"):
        g = builtin(name).graph
        graphs.append(g)
        graphs.extend(g.delete_edges([e]) for e in g.sorted_edges)
    graphs.extend(matchable_census(max_n))
    mismatches = 0
    for g in graphs:
        a = find_pfaffian_orientation(g) is not None
        b = brute_force_pfaffian_orientation(g) is not None
        mismatches += a != b
    rep.add(f"agreement on {len(graphs)} graphs", mismatches == 0, f"{mismatches} mismatches")
    return rep


def verify_paper(census_n: int = 6) -> list[Report]:
    return [
        verify_sign_tables(),
        verify_fixture_lists(),
        verify_minimality("gamma1"),
        verify_minimality("gamma2"),
        verify_non_reduction(),
        verify_deciders(census_n),
    ]
