"""Signs of 1-factors, clockwise parity and Pfaffian orientations.

Two independent deciders are provided.  The primary one solves a GF(2)
system with one equation per central circuit.  The oracle enumerates every
orientation modulo vertex flips and checks the signs of all 1-factors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import BudgetExceeded, GraphError, InternalCheckError
from .gf2 import GF2System
from .graph import Edge, EdgeCycle, Graph, Orientation, contract, edge, edge_sum
from .matching import (
    DEFAULT_MAX_VERTICES,
    OneFactor,
    central_circuits,
    enumerate_one_factors,
    is_one_factor,
    perfect_matching,
)

EVEN, ODD = 0, 1


def _permutation_parity(perm: list[int]) -> int:
    """0 for an even permutation of range(len(perm)), 1 for odd."""
    seen = [False] * len(perm)
    parity = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def directed_sequence(o: Orientation, f: Iterable[Edge]) -> list[int]:
    """Vertices of f written pair by pair as origin, terminus."""
    seq: list[int] = []
    for e in f:
        seq.extend(o.arc(e))
    return seq


def factor_sign(o: Orientation, base: Iterable[Edge], f: Iterable[Edge]) -> int:
    """Sign (+1/-1) of f relative to base under orientation o.

    Both factors are written as sequences origin, terminus, origin, ... and
    the sign is that of the permutation carrying one sequence to the other.
    """
    base, f = list(base), list(f)
    if len(base) != len(f):
        raise GraphError("factors of different sizes")
    s_base = directed_sequence(o, base)
    s_f = directed_sequence(o, f)
    pos = {v: i for i, v in enumerate(s_base)}
    if len(pos) != len(s_base) or set(s_f) != set(pos) or len(set(s_f)) != len(s_f):
        raise GraphError("factors do not cover the same vertices exactly once")
    return -1 if _permutation_parity([pos[v] for v in s_f]) else 1


@dataclass(frozen=True)
class SignedFactorTable:
    base: OneFactor
    rows: tuple[tuple[OneFactor, int], ...]

    @property
    def signs(self) -> list[int]:
        return [s for _, s in self.rows]

    def partition(self) -> frozenset[frozenset[OneFactor]]:
        """The two sign classes, independent of the base."""
        plus = frozenset(f for f, s in self.rows if s == 1)
        minus = frozenset(f for f, s in self.rows if s == -1)
        return frozenset(x for x in (plus, minus) if x)

    def is_constant(self) -> bool:
        return len({s for _, s in self.rows}) <= 1


def sign_table(g: Graph, o: Orientation, base: OneFactor | None = None) -> SignedFactorTable:
    o.check_host(g)
    factors = enumerate_one_factors(g)
    if not factors:
        raise GraphError("graph has no 1-factor")
    if base is None:
        base = factors[0]
    elif not is_one_factor(g, base):
        raise GraphError("base is not a 1-factor")
    rows = tuple((f, factor_sign(o, base, f)) for f in factors)
    return SignedFactorTable(frozenset(base), rows)


def agreements(c: EdgeCycle, o: Orientation) -> int:
    return sum(1 for u, v in c.arcs() if o.agrees(u, v))


def clockwise_parity(c: EdgeCycle, o: Orientation) -> int:
    """EVEN or ODD: parity of the circuit edges directed along its sense."""
    if len(c) % 2:
        raise GraphError("clockwise parity is only defined for even circuits")
    return agreements(c, o) & 1


def is_clockwise_even(c: EdgeCycle, o: Orientation) -> bool:
    return clockwise_parity(c, o) == EVEN


def is_pfaffian_orientation(g: Graph, o: Orientation, max_vertices: int = DEFAULT_MAX_VERTICES) -> bool:
    """All 1-factors share a sign.

    Cross-checked against the circuit criterion (every central circuit
    clockwise odd); disagreement raises InternalCheckError.
    """
    table = sign_table(g, o)
    by_signs = table.is_constant()
    by_circuits = all(clockwise_parity(c, o) == ODD for c in central_circuits(g, max_vertices))
    if by_signs != by_circuits:
        raise InternalCheckError("sign-table and circuit criteria disagree")
    return by_signs


# -- primary decider: GF(2) system over central circuits --------------------------


def pfaffian_system(g: Graph, o: Orientation, max_vertices: int = DEFAULT_MAX_VERTICES):
    """Equations for edge flips x making every central circuit clockwise odd under o.

    Returns (system, circuits, edge order).  Circuit i contributes the
    equation  sum_{e in C_i} x_e = 1 + agreements(C_i)  (mod 2).
    """
    order = g.sorted_edges
    pos = {e: i for i, e in enumerate(order)}
    circuits = central_circuits(g, max_vertices)
    system = GF2System(len(order))
    for c in circuits:
        mask = 0
        for e in c.edges:
            mask |= 1 << pos[e]
        system.add(mask, 1 ^ (agreements(c, o) & 1))
    return system, circuits, order


def find_pfaffian_orientation(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> Orientation | None:
    """A Pfaffian orientation of g, or None if g is not Pfaffian."""
    ref = Orientation.default(g)
    if perfect_matching(g) is None:
        return ref
    system, _, order = pfaffian_system(g, ref, max_vertices)
    x = system.solution()
    if x is None:
        return None
    o = ref.reverse(*(order[i] for i in range(len(order)) if x >> i & 1))
    if not is_pfaffian_orientation(g, o, max_vertices):
        raise InternalCheckError("GF(2) solution failed validation")
    return o


@lru_cache(maxsize=1 << 17)
def _is_pfaffian_cached(g: Graph) -> bool:
    ref = Orientation.default(g)
    if perfect_matching(g) is None:
        return True
    system, _, _ = pfaffian_system(g, ref, max_vertices=64)
    return system.consistent


def is_pfaffian(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES, validate: bool = False) -> bool:
    """Decide whether g has a Pfaffian orientation.

    With ``validate`` the orientation is constructed and checked against the
    sign table; otherwise the GF(2) feasibility verdict is returned (cached).
    """
    if g.n > max_vertices:
        raise BudgetExceeded(f"circuit enumeration capped at {max_vertices} vertices (graph has {g.n})")
    if validate:
        return find_pfaffian_orientation(g, max_vertices) is not None
    return _is_pfaffian_cached(g)


# -- oracle: exhaustive gauge-fixed orientation search --------------------------


def brute_force_pfaffian_orientation(g: Graph, max_free_bits: int = 24) -> Orientation | None:
    """Pfaffian orientation by exhaustive search, or None.

    Edges of a spanning forest keep the default direction: any orientation
    can be brought to that form by reversing all edges at some vertices, which
    changes every factor sign together.  The remaining 2^k direction choices
    are filtered, factor by factor, on the requirement that its sign equal the
    base factor's sign.  The first survivor in numeric order is returned.
    """
    ref = Orientation.default(g)
    factors = enumerate_one_factors(g)
    if not factors:
        return ref
    tree = g.spanning_forest()
    free = [e for e in g.sorted_edges if e not in tree]
    k = len(free)
    if k > max_free_bits:
        raise BudgetExceeded(f"{k} free edges exceeds the brute-force limit of {max_free_bits}")
    pos = {e: i for i, e in enumerate(free)}
    base = factors[0]
    xs = np.arange(1 << k, dtype=np.int64)
    for f in factors[1:]:
        mask = 0
        for e in edge_sum(base, f):
            if e in pos:
                mask |= 1 << pos[e]
        need = 1 if factor_sign(ref, base, f) == -1 else 0
        if mask == 0:
            if need:
                return None
            continue
        par = np.bitwise_count(xs & mask) & 1
        xs = xs[par == need]
        if xs.size == 0:
            return None
    x = int(xs[0])
    return ref.reverse(*(free[i] for i in range(k) if x >> i & 1))


# -- intractable sets --------------------------------------------------------------


@dataclass(frozen=True)
class IntractableSet:
    circuits: tuple[EdgeCycle, ...]
    factors: tuple[OneFactor, ...]  # a factor each circuit alternates with
    clockwise_even: tuple[bool, ...]

    def edge_sum(self) -> frozenset[Edge]:
        return edge_sum(*(c.edges for c in self.circuits))

    def is_valid(self) -> bool:
        return not self.edge_sum() and sum(self.clockwise_even) % 2 == 1


def alternating_factor(g: Graph, c: EdgeCycle) -> OneFactor:
    """A 1-factor with respect to which the central circuit c alternates."""
    rest = perfect_matching(g, [v for v in g.vertices if v not in set(c.vertices)])
    if rest is None:
        raise GraphError("circuit is not central")
    vs = c.vertices
    half = {edge(vs[i], vs[i + 1]) for i in range(0, len(vs), 2)}
    return frozenset(rest | half)


def _make_set(g: Graph, o: Orientation, cs: list[EdgeCycle]) -> IntractableSet:
    return IntractableSet(
        tuple(cs),
        tuple(alternating_factor(g, c) for c in cs),
        tuple(is_clockwise_even(c, o) for c in cs),
    )


def find_intractable_set(
    g: Graph,
    o: Orientation,
    size_bound: int = 8,
    node_budget: int = 2_000_000,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> IntractableSet | None:
    """An intractable set of at most ``size_bound`` central circuits, or None.

    An inconsistency certificate of the GF(2) system is exactly an intractable
    set; when none exists the answer is None for every bound.  If the
    certificate is larger than the bound, a bounded subset search looks for a
    smaller one and raises BudgetExceeded if it cannot finish.
    """
    o.check_host(g)
    if perfect_matching(g) is None:
        raise GraphError("graph has no 1-factor")
    system, circuits, order = pfaffian_system(g, o, max_vertices)
    if system.consistent:
        return None
    cert = [circuits[i] for i in system.certificate()]
    if len(cert) <= size_bound:
        out = _make_set(g, o, cert)
        assert out.is_valid()
        return out
    pos = {e: i for i, e in enumerate(order)}
    vecs = [sum(1 << pos[e] for e in c.edges) for c in circuits]
    even = [is_clockwise_even(c, o) for c in circuits]
    nodes = 0
    for k in range(1, size_bound + 1):
        for combo in itertools.combinations(range(len(circuits)), k):
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded("intractable-set subset search exceeded its node budget")
            acc = 0
            for i in combo:
                acc ^= vecs[i]
            if acc == 0 and sum(even[i] for i in combo) % 2:
                return _make_set(g, o, [circuits[i] for i in combo])
    return None


# -- degree-2 contraction ------------------------------------------------------


def contract_degree2(g: Graph, v: int) -> Graph:
    """Contract both edges at a vertex of degree 2."""
    if v not in g.adj:
        raise GraphError(f"unknown vertex {v}")
    if g.degree(v) != 2:
        raise GraphError(f"vertex {v} has degree {g.degree(v)}, not 2")
    u, w = sorted(g.adj[v])
    return contract(g, {u, v, w})
