"""Even subdivisions, odd-circuit reductions and forbidden-structure witnesses.

A witness for a graph G is a subgraph J, a (possibly empty) sequence of
odd-circuit contractions taking J to an even subdivision of K3,3, Γ1 or Γ2,
and a 1-factor of G - VJ.  Its existence certifies that G is not Pfaffian.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import BudgetExceeded, GraphError, InternalCheckError
from .fixtures import TARGETS, target_graph
from .graph import (
    Edge,
    EdgeCycle,
    Graph,
    circuit_vertex_sets,
    contract,
    contraction_merges,
    edge,
    find_isomorphism,
    induced_circuit_vertex_sets,
    iter_circuits,
    suppress_degree2,
)
from .matching import OneFactor, has_perfect_matching, is_one_factor, perfect_matching
from .nearbip import find_near_bipartite_pairs
from .pfaffian import is_pfaffian


@dataclass(frozen=True)
class SubdivisionCertificate:
    target: str
    vertex_map: Mapping[int, int]  # target vertex -> branch vertex
    chains: Mapping[Edge, tuple[int, ...]]  # target edge (u < v) -> path from image of u to image of v

    def chain_lengths(self) -> dict[Edge, int]:
        return {e: len(p) - 1 for e, p in self.chains.items()}


@dataclass(frozen=True)
class ReductionStep:
    circuit: EdgeCycle
    result: Graph
    merged: int = 0  # parallel edges merged by the contraction


@dataclass(frozen=True)
class Witness:
    J: frozenset[Edge]
    steps: tuple[ReductionStep, ...]
    certificate: SubdivisionCertificate
    complement_factor: OneFactor

    @property
    def target(self) -> str:
        return self.certificate.target

    @property
    def merged(self) -> bool:
        return any(s.merged for s in self.steps)

    def to_json(self) -> dict:
        return {
            "target": self.target,
            "J": [list(e) for e in sorted(self.J)],
            "steps": [list(s.circuit.vertices) for s in self.steps],
            "chains": {f"{u}-{v}": list(p) for (u, v), p in sorted(self.certificate.chains.items())},
            "complement_factor": [list(e) for e in sorted(self.complement_factor)],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Witness":
        """Rebuild a witness; reduction results are recomputed from J."""
        target = data["target"]
        if target not in TARGETS:
            raise GraphError(f"unknown target {target!r}")
        J = frozenset(edge(*e) for e in data["J"])
        cur = Graph.from_edges(J)
        steps = []
        for vs in data["steps"]:
            cyc = EdgeCycle(tuple(vs))
            nxt = contract(cur, vs)
            steps.append(ReductionStep(cyc, nxt, contraction_merges(cur, vs)))
            cur = nxt
        chains = {}
        vmap: dict[int, int] = {}
        for key, path in data["chains"].items():
            u, v = (int(x) for x in key.split("-"))
            chains[edge(u, v)] = tuple(path)
            vmap[u], vmap[v] = path[0], path[-1]
        cert = SubdivisionCertificate(target, vmap, chains)
        comp = frozenset(edge(*e) for e in data["complement_factor"])
        return cls(J, tuple(steps), cert, comp)


# -- even subdivisions ---------------------------------------------------------


def _resolve_target(target: str | Graph) -> tuple[str, Graph]:
    if isinstance(target, Graph):
        for name in TARGETS:
            if target_graph(name) == target:
                return name, target
        return "custom", target
    return target, target_graph(target)


def is_even_subdivision(j: Graph, target: str | Graph) -> SubdivisionCertificate | None:
    """Certificate that j is an even subdivision of target, or None."""
    name, tg = _resolve_target(target)
    if min(tg.degrees().values(), default=0) < 3:
        raise GraphError("target must have minimum degree at least 3")
    if j.n < tg.n or j.m < tg.m:
        return None
    deg = j.degrees()
    if sum(1 for d in deg.values() if d != 2) != tg.n:
        return None
    if not j.is_connected():
        return None
    try:
        h, chains = suppress_degree2(j)
    except GraphError:
        return None
    if any((len(p) - 1) % 2 == 0 for p in chains.values()):
        return None
    iso = find_isomorphism(tg, h)
    if iso is None:
        return None
    out = {}
    for a, b in tg.sorted_edges:
        path = chains[edge(iso[a], iso[b])]
        out[(a, b)] = path if path[0] == iso[a] else tuple(reversed(path))
    return SubdivisionCertificate(name, dict(iso), out)


def check_subdivision_certificate(j: Graph, cert: SubdivisionCertificate, tg: Graph | None = None) -> str | None:
    """Return None if the certificate is valid for j, otherwise the reason it fails."""
    tg = tg if tg is not None else target_graph(cert.target)
    vmap = cert.vertex_map
    if set(vmap) != set(tg.vertices):
        return "vertex map does not cover the target"
    if len(set(vmap.values())) != len(vmap):
        return "vertex map is not injective"
    if set(cert.chains) != set(tg.edges):
        return "chains do not match the target edges"
    branch = set(vmap.values())
    if not branch <= set(j.vertices):
        return "branch vertex missing from the candidate"
    used: set[Edge] = set()
    interior: set[int] = set()
    for (a, b), path in cert.chains.items():
        if path[0] != vmap[a] or path[-1] != vmap[b]:
            return f"chain for target edge {(a, b)} has wrong ends"
        if (len(path) - 1) % 2 == 0:
            return f"chain for target edge {(a, b)} has even length"
        for x, y in zip(path, path[1:]):
            e = edge(x, y)
            if not j.has_edge(x, y) or e in used:
                return f"chain for target edge {(a, b)} is not a path of unused edges"
            used.add(e)
        for x in path[1:-1]:
            if x in branch or x in interior or j.degree(x) != 2:
                return f"chain for target edge {(a, b)} has a bad interior vertex {x}"
            interior.add(x)
    if used != set(j.edges):
        return "chains do not cover every edge"
    if branch | interior != set(j.vertices):
        return "candidate has vertices outside the chains"
    return None


def find_even_subdivision_subgraph(g: Graph, target: str | Graph, budget: int = 10**7) -> tuple[frozenset[Edge], SubdivisionCertificate] | None:
    """Exhaustively look for a subgraph of g that is an even subdivision of target.

    Edges are decided one at a time; partial choices are cut as soon as some
    vertex's degree can no longer end in {0, 2} or the target's degree set,
    or more branch vertices than the target has are forced.
    """
    name, tg = _resolve_target(target)
    allowed = {0, 2} | set(tg.degrees().values())
    maxdeg = max(allowed)
    es = g.sorted_edges
    remaining = {v: g.degree(v) for v in g.vertices}
    deg = {v: 0 for v in g.vertices}
    chosen: list[Edge] = []
    nodes = 0

    def branch_count() -> int:
        return sum(1 for v in g.vertices if deg[v] not in (0, 2) and remaining[v] == 0)

    def feasible(v: int) -> bool:
        d, r = deg[v], remaining[v]
        return any(d <= a <= d + r for a in allowed)

    def rec(i: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded("even-subdivision subgraph search exceeded its budget")
        if branch_count() > tg.n:
            return None
        if i == len(es):
            if len(chosen) < tg.m:
                return None
            sub = g.edge_subgraph(chosen)
            cert = is_even_subdivision(sub, tg if name == "custom" else name)
            return (frozenset(chosen), cert) if cert else None
        u, v = es[i]
        remaining[u] -= 1
        remaining[v] -= 1
        try:
            if deg[u] < maxdeg and deg[v] < maxdeg:
                deg[u] += 1
                deg[v] += 1
                chosen.append(es[i])
                if feasible(u) and feasible(v):
                    res = rec(i + 1)
                    if res:
                        return res
                chosen.pop()
                deg[u] -= 1
                deg[v] -= 1
            if feasible(u) and feasible(v):
                res = rec(i + 1)
                if res:
                    return res
        finally:
            remaining[u] += 1
            remaining[v] += 1
        return None

    return rec(0)


# -- reductions --------------------------------------------------------------------


@dataclass
class _Budget:
    limit: int
    used: int = 0

    def tick(self, what: str) -> None:
        self.used += 1
        if self.used > self.limit:
            raise BudgetExceeded(f"{what} exceeded its budget of {self.limit} nodes")


def _odd_circuits(h: Graph, chordless_only: bool) -> list[EdgeCycle]:
    if chordless_only:
        return [EdgeCycle.from_edges(h.induced(s).edges) for s in induced_circuit_vertex_sets(h, parity=1)]
    rep: dict[frozenset[int], tuple[int, ...]] = {}
    for c in iter_circuits(h, parity=1):
        rep.setdefault(frozenset(c), c)
    return [EdgeCycle(rep[s]) for s in sorted(rep, key=lambda s: (len(s), sorted(s)))]


def _reduction_search(
    g: Graph,
    targets: Sequence[tuple[str, Graph]],
    min_steps: int,
    max_depth: int | None,
    budget: _Budget,
    chordless_only: bool,
    prune_pfaffian: bool,
) -> tuple[list[ReductionStep], SubdivisionCertificate] | None:
    min_n = min(tg.n for _, tg in targets)
    if max_depth is None:
        max_depth = max(0, (g.n - min_n) // 2)
    best_depth: dict[tuple, int] = {}

    def dfs(h: Graph, steps: list[ReductionStep]):
        budget.tick("reduction search")
        if len(steps) >= min_steps:
            for name, tg in targets:
                cert = is_even_subdivision(h, tg if name == "custom" else name)
                if cert is not None:
                    return steps, cert
        if len(steps) >= max_depth or h.n - 2 < min_n:
            return None
        key = (h.vertices, h.edges)
        if best_depth.get(key, max_depth + 1) <= len(steps):
            return None
        best_depth[key] = len(steps)
        for cyc in _odd_circuits(h, chordless_only):
            nh = contract(h, cyc.vertices)
            if nh.n < min_n:
                continue
            if prune_pfaffian and is_pfaffian(nh):
                continue
            step = ReductionStep(cyc, nh, contraction_merges(h, cyc.vertices))
            res = dfs(nh, steps + [step])
            if res is not None:
                return res
        return None

    return dfs(g, [])


def _targets(which: str | Graph | Iterable[str] | None) -> list[tuple[str, Graph]]:
    if which is None:
        which = TARGETS
    if isinstance(which, (str, Graph)):
        which = [which]
    return [_resolve_target(t) for t in which]


def is_reducible_to_even_subdivision(
    g: Graph,
    target: str | Graph = "k33",
    max_depth: int | None = None,
    budget: int = 10**6,
    chordless_only: bool = True,
    prune_pfaffian: bool = True,
) -> list[ReductionStep] | None:
    """At least one odd-circuit contraction taking g to an even subdivision of target.

    ``max_depth=None`` allows as many steps as the vertex count permits, which
    makes the search exhaustive.  ``chordless_only`` restricts steps to
    chordless circuits; ``prune_pfaffian`` abandons Pfaffian intermediate
    graphs, which can never reduce to a non-Pfaffian target.
    """
    res = _reduction_search(g, _targets(target), 1, max_depth, _Budget(budget), chordless_only, prune_pfaffian)
    return None if res is None else res[0]


def reduce_to_target(
    g: Graph,
    targets: str | Graph | Iterable[str] | None = None,
    max_depth: int | None = None,
    budget: int = 10**6,
    chordless_only: bool = True,
    prune_pfaffian: bool = True,
) -> tuple[list[ReductionStep], SubdivisionCertificate] | None:
    """Like is_reducible_to_even_subdivision but zero steps allowed; also returns the certificate."""
    return _reduction_search(g, _targets(targets), 0, max_depth, _Budget(budget), chordless_only, prune_pfaffian)


# -- witnesses -----------------------------------------------------------------------


@dataclass(frozen=True)
class SearchBounds:
    """Limits for the witness search; each applies per candidate vertex set."""

    max_depth: int | None = None  # None: exhaustive for the graph size
    max_subgraphs: int = 10**6
    node_budget: int = 10**6
    max_subset: int | None = None  # largest |U| tried; None: all of V(G)
    jobs: int = 1


def _spanning_ok(vertices: Sequence[int], es: frozenset[Edge]) -> bool:
    deg = {v: 0 for v in vertices}
    for u, v in es:
        deg[u] += 1
        deg[v] += 1
    if min(deg.values()) < 2:
        return False
    return Graph(tuple(vertices), es).is_connected()


def _search_vertex_set(g: Graph, U: tuple[int, ...], bounds: SearchBounds) -> Witness | None:
    targets = _targets(None)
    h = g.induced(U)
    if not _spanning_ok(U, h.edges) or not has_perfect_matching(h) or is_pfaffian(h):
        return None
    seen = {h.edges}
    level = [h.edges]
    examined = 0
    budget = _Budget(bounds.node_budget)
    while level:
        level.sort(key=lambda es: sorted(es))
        for es in level:
            examined += 1
            if examined > bounds.max_subgraphs:
                raise BudgetExceeded(f"more than {bounds.max_subgraphs} candidate subgraphs on {len(U)} vertices")
            j = Graph(U, es)
            res = _reduction_search(j, targets, 0, bounds.max_depth, budget, True, True)
            if res is not None:
                steps, cert = res
                rest = [v for v in g.vertices if v not in set(U)]
                comp = perfect_matching(g, rest)
                return Witness(es, tuple(steps), cert, comp)
        nxt = []
        for es in level:
            for e in sorted(es):
                smaller = es - {e}
                if smaller in seen:
                    continue
                seen.add(smaller)
                if _spanning_ok(U, smaller) and not is_pfaffian(Graph(U, smaller)):
                    nxt.append(smaller)
        level = nxt
    return None


def _search_star(args):
    return _search_vertex_set(*args)


def candidate_vertex_sets(g: Graph, size: int) -> Iterable[tuple[int, ...]]:
    """Vertex sets of the given size whose complement has a perfect matching."""
    for U in itertools.combinations(g.vertices, size):
        rest = set(g.vertices) - set(U)
        if has_perfect_matching(g, rest):
            yield U


def find_witness(g: Graph, bounds: SearchBounds = SearchBounds()) -> Witness | None:
    """Search for a witness, smallest vertex sets first.

    Within a vertex set U the candidate subgraphs J are the non-Pfaffian,
    connected spanning subgraphs of G[U] of minimum degree 2, tried in order
    of decreasing edge count.  A Pfaffian J can be skipped because every
    graph reducible to an even subdivision of a target is non-Pfaffian.
    Returns None when nothing is found; with the default bounds this is
    exhaustive.
    """
    min_n = min(target_graph(t).n for t in TARGETS)
    top = g.n if bounds.max_subset is None else min(g.n, bounds.max_subset)
    sizes = [k for k in range(min_n, top + 1) if k % 2 == 0 and (g.n - k) % 2 == 0]
    for k in sizes:
        Us = list(candidate_vertex_sets(g, k))
        if bounds.jobs > 1 and len(Us) > 1:
            with ProcessPoolExecutor(max_workers=bounds.jobs) as ex:
                for w in ex.map(_search_star, [(g, U, bounds) for U in Us], chunksize=4):
                    if w is not None:
                        return w
        else:
            for U in Us:
                w = _search_vertex_set(g, U, bounds)
                if w is not None:
                    return w
    return None


def verify_witness(g: Graph, w: Witness, cross_check: bool = True) -> tuple[bool, str]:
    """Mechanically check every part of a witness; returns (ok, reason)."""
    if not w.J:
        return False, "J is empty"
    if not w.J <= g.edges:
        return False, "J is not a subgraph of G"
    cur = Graph.from_edges(w.J)
    rest = [v for v in g.vertices if v not in set(cur.vertices)]
    comp = g.induced(rest)
    if not is_one_factor(comp, w.complement_factor):
        return False, "complement factor is not a 1-factor of G - VJ"
    for i, step in enumerate(w.steps):
        cyc = step.circuit
        if len(cyc) % 2 == 0:
            return False, f"step {i}: reduction circuit not odd"
        if not cyc.edges <= cur.edges:
            return False, f"step {i}: circuit is not in the current graph"
        nxt = contract(cur, cyc.vertices)
        if nxt != step.result:
            return False, f"step {i}: recorded result differs from the contraction"
        cur = nxt
    if w.target not in TARGETS:
        return False, f"unknown target {w.target!r}"
    why = check_subdivision_certificate(cur, w.certificate)
    if why is not None:
        return False, why
    if cross_check and g.n <= 16 and is_pfaffian(g):
        raise InternalCheckError("verified witness for a Pfaffian graph")
    return True, "ok"


@dataclass
class MainTheoremReport:
    near_bipartite: bool
    pfaffian: bool
    witness: Witness | None = None
    inconclusive: bool = False
    reason: str = ""
    pairs: int = 0

    @property
    def consistent(self) -> bool | None:
        """Whether witness existence matches non-Pfaffian-ness (None if it cannot be judged)."""
        if self.inconclusive or not self.near_bipartite:
            return None
        return (self.witness is not None) == (not self.pfaffian)

    @property
    def flagged(self) -> bool:
        return self.witness is not None and self.witness.merged


def check_main_theorem(g: Graph, bounds: SearchBounds = SearchBounds()) -> MainTheoremReport:
    pairs = find_near_bipartite_pairs(g)
    pf = is_pfaffian(g)
    rep = MainTheoremReport(bool(pairs), pf, pairs=len(pairs))
    try:
        rep.witness = find_witness(g, bounds)
    except BudgetExceeded as exc:
        rep.inconclusive = True
        rep.reason = str(exc)
        return rep
    if rep.witness is not None:
        ok, why = verify_witness(g, rep.witness, cross_check=False)
        if not ok:
            raise InternalCheckError(f"search produced an invalid witness: {why}")
    return rep
