"""1-factors, 1-extendibility, alternating circuits and ear decompositions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import BudgetExceeded, GraphError, InternalCheckError
from .graph import Edge, EdgeCycle, Graph, edge, edge_sum, iter_circuits

OneFactor = frozenset  # frozenset[Edge]

DEFAULT_MAX_VERTICES = 16


def factor_key(f: Iterable[Edge]) -> tuple[Edge, ...]:
    return tuple(sorted(f))


class _Matcher:
    """Perfect-matching queries on vertex subsets of one graph, memoised by bitmask."""

    def __init__(self, g: Graph):
        self.g = g
        self.nbr = g.nbr_masks
        self.memo: dict[int, bool] = {0: True}

    def has_pm(self, mask: int) -> bool:
        hit = self.memo.get(mask)
        if hit is not None:
            return hit
        ok = False
        if bin(mask).count("1") % 2 == 0:
            low = mask & -mask
            v = low.bit_length() - 1
            rest = mask ^ low
            cand = self.nbr[v] & rest
            while cand:
                b = cand & -cand
                cand ^= b
                if self.has_pm(rest ^ b):
                    ok = True
                    break
        self.memo[mask] = ok
        return ok

    def all_pm(self, mask: int) -> list[list[tuple[int, int]]]:
        if mask == 0:
            return [[]]
        if not self.has_pm(mask):
            return []
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        out = []
        cand = self.nbr[v] & rest
        while cand:
            b = cand & -cand
            cand ^= b
            w = b.bit_length() - 1
            for tail in self.all_pm(rest ^ b):
                out.append([(v, w), *tail])
        return out

    def one_pm(self, mask: int) -> list[tuple[int, int]] | None:
        if not self.has_pm(mask):
            return None
        out = []
        while mask:
            low = mask & -mask
            v = low.bit_length() - 1
            rest = mask ^ low
            cand = self.nbr[v] & rest
            while cand:
                b = cand & -cand
                cand ^= b
                if self.has_pm(rest ^ b):
                    out.append((v, b.bit_length() - 1))
                    mask = rest ^ b
                    break
        return out

    def mask_of(self, vs: Iterable[int]) -> int:
        idx = self.g.index
        return sum(1 << idx[v] for v in vs)

    def to_edges(self, pairs) -> frozenset[Edge]:
        vs = self.g.vertices
        return frozenset(edge(vs[a], vs[b]) for a, b in pairs)


def matcher(g: Graph) -> _Matcher:
    m = g.__dict__.get("_matcher")
    if m is None:
        m = _Matcher(g)
        g.__dict__["_matcher"] = m
    return m


def enumerate_one_factors(g: Graph) -> list[OneFactor]:
    """All 1-factors of g, sorted lexicographically by their sorted edge lists."""
    mt = matcher(g)
    full = (1 << g.n) - 1
    fs = [mt.to_edges(p) for p in mt.all_pm(full)]
    return sorted(fs, key=factor_key)


def has_perfect_matching(g: Graph, vertices: Iterable[int] | None = None) -> bool:
    mt = matcher(g)
    mask = (1 << g.n) - 1 if vertices is None else mt.mask_of(vertices)
    return mt.has_pm(mask)


def perfect_matching(g: Graph, vertices: Iterable[int] | None = None) -> OneFactor | None:
    """One perfect matching of g (or of g restricted to ``vertices``)."""
    mt = matcher(g)
    mask = (1 << g.n) - 1 if vertices is None else mt.mask_of(vertices)
    pairs = mt.one_pm(mask)
    return None if pairs is None else mt.to_edges(pairs)


def is_one_factor(g: Graph, f: Iterable[Edge]) -> bool:
    f = {edge(*e) for e in f}
    if not f <= g.edges:
        return False
    covered = [x for e in f for x in e]
    return len(covered) == len(set(covered)) == g.n


def is_one_extendible(g: Graph) -> tuple[bool, Edge | None]:
    """(True, None) if every edge lies in a 1-factor, else (False, first uncovered edge)."""
    covered: set[Edge] = set()
    for f in enumerate_one_factors(g):
        covered |= f
    for e in g.sorted_edges:
        if e not in covered:
            return False, e
    return True, None


@dataclass(frozen=True)
class AlternatingCircuit:
    cycle: EdgeCycle
    factor: OneFactor

    @property
    def edges(self) -> frozenset[Edge]:
        return self.cycle.edges

    def switched(self) -> OneFactor:
        """The factor obtained by exchanging along the circuit."""
        return edge_sum(self.factor, self.cycle.edges)


def _circuit_sort_key(c: EdgeCycle):
    return (len(c), sorted(c.edges))


def _check_size(g: Graph, max_vertices: int) -> None:
    if g.n > max_vertices:
        raise BudgetExceeded(f"circuit enumeration capped at {max_vertices} vertices (graph has {g.n})")


def alternating_circuits(
    g: Graph, f: Iterable[Edge], check: bool = True, max_vertices: int = DEFAULT_MAX_VERTICES
) -> list[AlternatingCircuit]:
    """Every circuit C with f + C a 1-factor.

    Primary route: components of f + f' over all factors f'.  With ``check``
    the result is compared with a direct scan of even circuits.
    """
    f = frozenset(edge(*e) for e in f)
    if not is_one_factor(g, f):
        raise GraphError("not a 1-factor of the graph")
    _check_size(g, max_vertices)
    found: dict[frozenset[Edge], EdgeCycle] = {}
    for other in enumerate_one_factors(g):
        diff = edge_sum(f, other)
        for comp in _cycle_components(diff):
            found.setdefault(comp, EdgeCycle.from_edges(comp))
    if check:
        direct = set()
        for vs in iter_circuits(g, parity=0):
            k = len(vs)
            in_f = [edge(vs[i], vs[(i + 1) % k]) in f for i in range(k)]
            if all(in_f[i] != in_f[i + 1] for i in range(k - 1)):
                direct.add(EdgeCycle(vs).edges)
        if direct != set(found):
            raise InternalCheckError("alternating circuit enumerations disagree")
    cycles = sorted(found.values(), key=_circuit_sort_key)
    return [AlternatingCircuit(c, f) for c in cycles]


def _cycle_components(es: frozenset[Edge]) -> list[frozenset[Edge]]:
    nb: dict[int, list[Edge]] = {}
    for e in es:
        for x in e:
            nb.setdefault(x, []).append(e)
    seen: set[Edge] = set()
    out = []
    for e in sorted(es):
        if e in seen:
            continue
        comp = {e}
        stack = [e]
        while stack:
            cur = stack.pop()
            for x in cur:
                for nxt in nb[x]:
                    if nxt not in comp:
                        comp.add(nxt)
                        stack.append(nxt)
        seen |= comp
        out.append(frozenset(comp))
    return out


def central_circuits(g: Graph, max_vertices: int = DEFAULT_MAX_VERTICES) -> list[EdgeCycle]:
    """Even circuits whose vertex-deleted complement has a perfect matching."""
    _check_size(g, max_vertices)
    mt = matcher(g)
    full = (1 << g.n) - 1
    if not mt.has_pm(full):
        return []
    idx = g.index
    out = []
    for vs in iter_circuits(g, parity=0):
        mask = full
        for v in vs:
            mask &= ~(1 << idx[v])
        if mt.has_pm(mask):
            out.append(EdgeCycle(vs))
    return sorted(out, key=_circuit_sort_key)


# -- ear decompositions -------------------------------------------------------


def _arcs_outside(cycle: EdgeCycle, inside: frozenset[Edge]) -> list[list[Edge]] | None:
    """Maximal subpaths of the circuit avoiding ``inside``; None if the circuit misses it."""
    arcs = cycle.arcs()
    k = len(arcs)
    flags = [edge(*a) in inside for a in arcs]
    if not any(flags):
        return None
    start = flags.index(True)
    out: list[list[Edge]] = []
    cur: list[Edge] = []
    for i in range(1, k + 1):
        j = (start + i) % k
        if flags[j]:
            if cur:
                out.append(cur)
                cur = []
        else:
            cur.append(edge(*arcs[j]))
    if cur:
        out.append(cur)
    return out


def ear_decomposition(
    g: Graph, f: Iterable[Edge], budget: int = 10**6, max_ears: int = 2
) -> list[frozenset[Edge]] | None:
    """Search for a sequence of 1-extendible subgraphs from one edge of f up to g.

    Each step adds the arcs outside the current subgraph of one f-alternating
    circuit; there must be between one and ``max_ears`` of them and each must
    have odd length.  Subgraphs are returned as edge sets.  None means the
    budget of expanded nodes ran out without success.
    """
    f = frozenset(edge(*e) for e in f)
    ok, bad = is_one_extendible(g)
    if not ok:
        raise GraphError(f"graph is not 1-extendible (edge {bad} is in no 1-factor)")
    if not is_one_factor(g, f):
        raise GraphError("not a 1-factor of the graph")
    circuits = [a.cycle for a in alternating_circuits(g, f, check=False)]
    target = g.edges
    ext_memo: dict[frozenset[Edge], bool] = {}

    def good(h: frozenset[Edge]) -> bool:
        hit = ext_memo.get(h)
        if hit is None:
            sub = g.edge_subgraph(h)
            hit = is_one_factor(sub, f & h) and is_one_extendible(sub)[0]
            ext_memo[h] = hit
        return hit

    nodes = 0
    dead: set[frozenset[Edge]] = set()

    def dfs(h: frozenset[Edge], seq: list[frozenset[Edge]]) -> list[frozenset[Edge]] | None:
        nonlocal nodes
        if h == target:
            return seq
        nodes += 1
        if nodes > budget:
            raise _OutOfBudget
        for c in circuits:
            if c.edges <= h:
                continue
            arcs = _arcs_outside(c, h)
            if arcs is None or not 1 <= len(arcs) <= max_ears:
                continue
            if any(len(a) % 2 == 0 for a in arcs):
                continue
            nh = h | c.edges
            if nh in dead or not good(nh):
                continue
            res = dfs(nh, seq + [nh])
            if res is not None:
                return res
            dead.add(nh)
        return None

    for e0 in sorted(f):
        h0 = frozenset([e0])
        try:
            res = dfs(h0, [h0])
        except _OutOfBudget:
            return None
        if res is not None:
            return res
    return None


class _OutOfBudget(Exception):
    pass


