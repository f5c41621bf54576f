"""Built-in graphs K3,3, Γ1 and Γ2 with their printed 1-factors and orientations.

Edge sets are the unions of the printed 1-factors.  Each printed pair (x, y)
is read as the arc x -> y.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GraphError
from .graph import Edge, Graph, Orientation, edge
from .matching import OneFactor

# (row, sign) as printed beside the drawings
K33_TABLE = [
    ("ab cd ef", +1),
    ("ab cf ed", -1),
    ("ad cf eb", +1),
    ("ad cb ef", -1),
    ("af cb ed", +1),
    ("af cd eb", -1),
]

GAMMA1_TABLE = [
    ("ab cd ef gh ij kl", +1),
    ("bc de fg hi jk la", -1),
    ("da je bc fg hi kl", +1),
    ("bg hk cd ef ij la", -1),
    ("ic fl ab de gh jk", +1),
    ("da bg ic je hk fl", -1),
]

GAMMA2_TABLE = [
    ("ab cd fe hg ij kl", +1),
    ("bc de gf ih jk la", -1),
    ("el ab cd gf ih jk", +1),
    ("hd kg bc fe ij la", -1),
    ("ai fb cj de hg kl", +1),
    ("ai fb cj hd el kg", -1),
]

# complete 1-factor lists, in printed order
GAMMA1_FACTORS = [
    "ab cd fe hg ji lk",
    "la bc de gf ih kj",
    "bc ad fe hg ji lk",
    "ab cd je gf ih lk",
    "ad bc je gf ih lk",
    "la bc de gf kh ji",
    "la bg ih kj cd fe",
    "la bg kh cd fe ji",
    "lf de ci kj ab hg",
    "ad bg ci je kh lf",
]

GAMMA2_FACTORS = [
    "ab cd ef gh ij kl",
    "cb ed gf ih kj al",
    "ab cj ed gf ih kl",
    "ab cd el gf ih kj",
    "cb dh kg al ef ij",
    "bf ed cj ai kl gh",
    "bf ai kj el cd gh",
    "ed bf al kg ih cj",
    "gf dh cb ai kj el",
    "bf el kg dh cj ai",
]

# Γ1: every 1-factor is plus except f10; Γ2: f1 against the other nine
GAMMA1_REORIENTED_SIGNS = [+1] * 9 + [-1]
GAMMA2_REORIENTED_SIGNS = [+1] + [-1] * 9

GAMMA1_NEAR_BIPARTITE_PAIR = ("fl", "ic")
GAMMA2_NEAR_BIPARTITE_PAIR = ("fe", "ij")

# edge deleted -> edges whose reversal gives a Pfaffian orientation of the rest
# (empty tuple: the unmodified orientation already works)
GAMMA1_RECIPES = {
    "de": ("lf",),
    "kj": ("lf",),
    "gf": ("je",),
    "ih": ("je",),
    "la": ("bg",),
    "bc": ("ad",),
}
GAMMA2_RECIPES = {
    "el": ("cd",),
    "dh": ("ef",),
    "ai": ("gh",),
}

K33_NAMES = "abcdef"
GAMMA_NAMES = "abcdefghijkl"


def _arcs(row: str) -> list[tuple[str, str]]:
    return [(p[0], p[1]) for p in row.split()]


@dataclass(frozen=True)
class Fixture:
    name: str
    graph: Graph
    orientation: Orientation
    factors: tuple[OneFactor, ...]
    table: tuple[tuple[OneFactor, int], ...]

    @property
    def expected_signs(self) -> list[int]:
        return [s for _, s in self.table]

    def edge_of(self, pair: str) -> Edge:
        return self.graph.e(pair[0], pair[1])


def _build(name: str, names: str, oriented_rows: list[str], factor_rows: list[str], table):
    ids = {s: i for i, s in enumerate(names)}
    arcs: dict[Edge, tuple[int, int]] = {}
    for row in oriented_rows:
        for a, b in _arcs(row):
            u, v = ids[a], ids[b]
            e = edge(u, v)
            if arcs.setdefault(e, (u, v)) != (u, v):
                raise GraphError(f"{name}: edge {a}{b} printed with both directions")
    g = Graph.from_edges(arcs, vertices=range(len(names)), labels={i: s for s, i in ids.items()})
    o = Orientation.from_arcs(arcs.values())

    def factor(row: str) -> OneFactor:
        return frozenset(edge(ids[a], ids[b]) for a, b in _arcs(row))

    factors = tuple(factor(r) for r in factor_rows)
    rows = tuple((factor(r), s) for r, s in table)
    return Fixture(name, g, o, factors, rows)


def builtin(name: str) -> Fixture:
    """Return a fixture: k33, gamma1, gamma2, gamma1_sec6 or gamma2_sec6."""
    if name == "k33":
        rows = [r for r, _ in K33_TABLE]
        return _build(name, K33_NAMES, rows, rows, K33_TABLE)
    if name == "gamma1":
        return _build(name, GAMMA_NAMES, [r for r, _ in GAMMA1_TABLE], GAMMA1_FACTORS, GAMMA1_TABLE)
    if name == "gamma2":
        return _build(name, GAMMA_NAMES, [r for r, _ in GAMMA2_TABLE], GAMMA2_FACTORS, GAMMA2_TABLE)
    if name == "gamma1_sec6":
        table = list(zip(GAMMA1_FACTORS, GAMMA1_REORIENTED_SIGNS))
        return _build(name, GAMMA_NAMES, GAMMA1_FACTORS, GAMMA1_FACTORS, table)
    if name == "gamma2_sec6":
        table = list(zip(GAMMA2_FACTORS, GAMMA2_REORIENTED_SIGNS))
        return _build(name, GAMMA_NAMES, GAMMA2_FACTORS, GAMMA2_FACTORS, table)
    raise GraphError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")


BUILTINS = ("k33", "gamma1", "gamma2", "gamma1_sec6", "gamma2_sec6")

TARGETS = ("k33", "gamma1", "gamma2")


def target_graph(name: str) -> Graph:
    if name not in TARGETS:
        raise GraphError(f"unknown target {name!r}; choose from {', '.join(TARGETS)}")
    return builtin(name).graph
