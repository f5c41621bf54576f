"""Simple undirected graphs, orientations and the structural operations on them.

Vertices are small integers; an optional label map carries the letter names
used by the built-in fixtures.  Edges are stored as sorted pairs.  Every
operation returns a new graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import GraphError

Edge = tuple[int, int]
Arc = tuple[int, int]


def edge(u: int, v: int) -> Edge:
    """Return the canonical (sorted) form of the undirected edge uv."""
    if u == v:
        raise GraphError(f"loop at vertex {u}")
    return (u, v) if u < v else (v, u)


def edge_sum(*edge_sets: Iterable[Edge]) -> frozenset[Edge]:
    """Mod-2 sum (symmetric difference) of edge sets."""
    acc: set[Edge] = set()
    for es in edge_sets:
        acc.symmetric_difference_update(es)
    return frozenset(acc)


@dataclass(frozen=True)
class Graph:
    vertices: tuple[int, ...]
    edges: frozenset[Edge]
    labels: tuple[tuple[int, str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        vs = tuple(sorted(set(self.vertices)))
        if len(vs) != len(self.vertices):
            raise GraphError("duplicate vertex ids")
        es = set()
        vset = set(vs)
        for u, v in self.edges:
            e = edge(u, v)
            if u not in vset or v not in vset:
                raise GraphError(f"edge {e} has an undeclared endpoint")
            es.add(e)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", frozenset(es))
        object.__setattr__(self, "labels", tuple(sorted((v, s) for v, s in self.labels if v in vset)))

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int]],
        vertices: Iterable[int] | None = None,
        labels: Mapping[int, str] | None = None,
    ) -> "Graph":
        edges = [edge(u, v) for u, v in edges]
        if len(set(edges)) != len(edges):
            raise GraphError("multiple edges")
        vs = set(vertices) if vertices is not None else set()
        if vertices is None:
            for u, v in edges:
                vs.update((u, v))
        return cls(tuple(sorted(vs)), frozenset(edges), tuple((labels or {}).items()))

    @classmethod
    def from_labelled(cls, pairs: Iterable[str | tuple[str, str]], names: str | Sequence[str] | None = None) -> "Graph":
        """Build a graph from letter-named edges such as ``["ab", "cd"]``."""
        pairs = [tuple(p) for p in pairs]
        if names is None:
            names = sorted({x for p in pairs for x in p})
        ids = {s: i for i, s in enumerate(names)}
        return cls.from_edges(
            [(ids[a], ids[b]) for a, b in pairs],
            vertices=range(len(names)),
            labels={i: s for s, i in ids.items()},
        )

    # -- basic queries -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        nb: dict[int, set[int]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return {v: frozenset(s) for v, s in nb.items()}

    @cached_property
    def label_map(self) -> dict[int, str]:
        return dict(self.labels)

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def nbr_masks(self) -> tuple[int, ...]:
        idx = self.index
        return tuple(sum(1 << idx[w] for w in self.adj[v]) for v in self.vertices)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> dict[int, int]:
        return {v: len(self.adj[v]) for v in self.vertices}

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and edge(u, v) in self.edges

    def label(self, v: int) -> str:
        return self.label_map.get(v, str(v))

    def vertex_by_label(self, name: str) -> int:
        for v, s in self.labels:
            if s == name:
                return v
        raise GraphError(f"no vertex labelled {name!r}")

    def e(self, a: str, b: str) -> Edge:
        """Edge between two labelled vertices."""
        return edge(self.vertex_by_label(a), self.vertex_by_label(b))

    def fmt_edge(self, e: Edge) -> str:
        return f"({self.label(e[0])},{self.label(e[1])})"

    # -- derived graphs ------------------------------------------------

    def _derive(self, vertices: Iterable[int], edges: Iterable[Edge]) -> "Graph":
        vs = tuple(vertices)
        keep = set(vs)
        return Graph(vs, frozenset(edges), tuple((v, s) for v, s in self.labels if v in keep))

    def delete_edges(self, es: Iterable[Edge]) -> "Graph":
        drop = {edge(*e) for e in es}
        missing = drop - self.edges
        if missing:
            raise GraphError(f"edges not in graph: {sorted(missing)}")
        return self._derive(self.vertices, self.edges - drop)

    def add_edges(self, es: Iterable[Edge]) -> "Graph":
        return self._derive(self.vertices, self.edges | {edge(*e) for e in es})

    def delete_vertices(self, vs: Iterable[int]) -> "Graph":
        drop = set(vs)
        return self._derive(
            (v for v in self.vertices if v not in drop),
            (e for e in self.edges if e[0] not in drop and e[1] not in drop),
        )

    def induced(self, vs: Iterable[int]) -> "Graph":
        keep = set(vs)
        if not keep <= set(self.vertices):
            raise GraphError("unknown vertex in induced subgraph")
        return self._derive(sorted(keep), (e for e in self.edges if e[0] in keep and e[1] in keep))

    def edge_subgraph(self, es: Iterable[Edge]) -> "Graph":
        """Subgraph determined by an edge set (no isolated vertices)."""
        es = {edge(*e) for e in es}
        if not es <= self.edges:
            raise GraphError("edge subset is not contained in the host graph")
        vs = {x for e in es for x in e}
        return self._derive(sorted(vs), es)

    def relabel(self, mapping: Mapping[int, int]) -> "Graph":
        lab = self.label_map
        return Graph(
            tuple(mapping[v] for v in self.vertices),
            frozenset(edge(mapping[u], mapping[v]) for u, v in self.edges),
            tuple((mapping[v], s) for v, s in lab.items()),
        )

    def canonical_ids(self) -> "Graph":
        """Relabel vertices to 0..n-1 preserving order."""
        return self.relabel(self.index)

    # -- connectivity --------------------------------------------------

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            dq = deque([s])
            while dq:
                u = dq.popleft()
                for w in self.adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        dq.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def spanning_forest(self) -> frozenset[Edge]:
        """BFS spanning forest rooted at the smallest vertex of each component."""
        seen: set[int] = set()
        tree: set[Edge] = set()
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            dq = deque([s])
            while dq:
                u = dq.popleft()
                for w in sorted(self.adj[u]):
                    if w not in seen:
                        seen.add(w)
                        tree.add(edge(u, w))
                        dq.append(w)
        return frozenset(tree)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Bipartition(NamedTuple):
    M: frozenset[int]
    N: frozenset[int]


def bipartition(g: Graph) -> Bipartition | None:
    """Two-colour g, or None if it has an odd circuit.

    In every component the smallest vertex goes to M.
    """
    if g.n == 0:
        raise GraphError("empty graph")
    colour: dict[int, int] = {}
    for s in g.vertices:
        if s in colour:
            continue
        colour[s] = 0
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for w in g.adj[u]:
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    dq.append(w)
                elif colour[w] == colour[u]:
                    return None
    return Bipartition(
        frozenset(v for v, c in colour.items() if c == 0),
        frozenset(v for v, c in colour.items() if c == 1),
    )


def is_bipartite(g: Graph) -> bool:
    return g.n == 0 or bipartition(g) is not None


# -- contraction and subdivision --------------------------------------------


def contract(g: Graph, s: Iterable[int]) -> Graph:
    """Contract the vertex set s to a single vertex.

    The new vertex reuses the smallest id in s, so repeated contractions of the
    same vertex classes give identical graphs whatever the order.  Edges inside
    s vanish and parallel edges are merged.
    """
    s = set(s)
    if not s:
        raise GraphError("cannot contract an empty vertex set")
    unknown = s - set(g.vertices)
    if unknown:
        raise GraphError(f"unknown vertices {sorted(unknown)}")
    new = min(s)
    rename = {v: (new if v in s else v) for v in g.vertices}
    es = set()
    for u, v in g.edges:
        a, b = rename[u], rename[v]
        if a != b:
            es.add(edge(a, b))
    lab = g.label_map
    labels = {v: x for v, x in lab.items() if v not in s}
    if lab and len(s) > 1:
        labels[new] = "[" + "".join(g.label(v) for v in sorted(s)) + "]"
    elif new in lab:
        labels[new] = lab[new]
    vs = [v for v in g.vertices if v not in s or v == new]
    return Graph(tuple(vs), frozenset(es), tuple(labels.items()))


def contraction_merges(g: Graph, s: Iterable[int]) -> int:
    """Number of edges lost to parallel merging when contracting s."""
    s = set(s)
    outside = [edge(*e) for e in g.edges if (e[0] in s) != (e[1] in s)]
    ends = [e[1] if e[0] in s else e[0] for e in outside]
    return len(ends) - len(set(ends))


def subdivide_edge(g: Graph, e: Edge, k: int) -> Graph:
    """Replace edge e by a path of k edges through k-1 fresh vertices.

    The subdivision is even exactly when k is odd.
    """
    e = edge(*e)
    if e not in g.edges:
        raise GraphError(f"edge {e} not in graph")
    if k < 1:
        raise GraphError("path length must be at least 1")
    if k == 1:
        return g
    nxt = (max(g.vertices) + 1) if g.vertices else 0
    fresh = list(range(nxt, nxt + k - 1))
    path = [e[0], *fresh, e[1]]
    es = (g.edges - {e}) | {edge(a, b) for a, b in zip(path, path[1:])}
    return Graph(g.vertices + tuple(fresh), frozenset(es), g.labels)


def suppress_degree2(g: Graph) -> tuple[Graph, dict[Edge, tuple[int, ...]]]:
    """Replace every maximal path whose interior has degree 2 by one edge.

    Returns the suppressed graph on the vertices of degree other than 2 and,
    for each of its edges (u, v) with u < v, the original path from u to v.
    Chain lengths are ``len(path) - 1``.
    """
    if not g.is_connected():
        raise GraphError("suppression needs a connected graph")
    deg = g.degrees()
    branch = [v for v in g.vertices if deg[v] != 2]
    if not branch:
        raise GraphError("graph is a bare circuit; nothing to suppress onto")
    bset = set(branch)
    chains: dict[Edge, tuple[int, ...]] = {}
    used: set[Edge] = set()
    for b in branch:
        for w in sorted(g.adj[b]):
            first = edge(b, w)
            if first in used:
                continue
            path = [b, w]
            while path[-1] not in bset:
                cur, prev = path[-1], path[-2]
                (nxt,) = g.adj[cur] - {prev}
                path.append(nxt)
            used.update(edge(x, y) for x, y in zip(path, path[1:]))
            end = path[-1]
            if end == b:
                raise GraphError(f"suppression creates a loop at vertex {b}")
            key = edge(b, end)
            if key in chains:
                raise GraphError(f"suppression creates parallel edges between {key}")
            chains[key] = tuple(path) if b < end else tuple(reversed(path))
    h = Graph(tuple(branch), frozenset(chains), tuple((v, s) for v, s in g.labels if v in bset))
    return h, chains


# -- circuits ---------------------------------------------------------------


@dataclass(frozen=True)
class EdgeCycle:
    """A circuit given by its cyclic vertex order (which also fixes a sense)."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 3 or len(set(self.vertices)) != len(self.vertices):
            raise GraphError(f"not a circuit: {self.vertices}")

    @cached_property
    def edges(self) -> frozenset[Edge]:
        vs = self.vertices
        return frozenset(edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def arcs(self) -> list[Arc]:
        """Edges as ordered pairs following the sense."""
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def __len__(self) -> int:
        return len(self.vertices)

    def reversed(self) -> "EdgeCycle":
        return EdgeCycle(self.vertices[:1] + tuple(reversed(self.vertices[1:])))

    def check_in(self, g: Graph) -> None:
        if not self.edges <= g.edges:
            raise GraphError("circuit uses edges not in the graph")

    @classmethod
    def from_edges(cls, es: Iterable[Edge]) -> "EdgeCycle":
        """Recover a cyclic order from an edge set forming a single circuit."""
        es = {edge(*e) for e in es}
        nb: dict[int, list[int]] = {}
        for u, v in es:
            nb.setdefault(u, []).append(v)
            nb.setdefault(v, []).append(u)
        if not nb or any(len(x) != 2 for x in nb.values()):
            raise GraphError("edge set is not a circuit")
        start = min(nb)
        order = [start, min(nb[start])]
        while True:
            a, b = nb[order[-1]]
            nxt = a if a != order[-2] else b
            if nxt == start:
                break
            order.append(nxt)
        if len(order) != len(nb):
            raise GraphError("edge set is not a single circuit")
        return cls(tuple(order))


def iter_circuits(g: Graph, parity: int | None = None, vertex_mask: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every circuit of g exactly once as a vertex tuple.

    Each circuit starts at its smallest vertex and its second vertex is
    smaller than its last.  ``parity`` (0 even, 1 odd) filters on length.
    """
    verts = g.vertices
    nbr = g.nbr_masks
    n = len(verts)
    if vertex_mask is None:
        vertex_mask = (1 << n) - 1
    for s in range(n):
        if not vertex_mask >> s & 1:
            continue
        allowed = vertex_mask & ~((1 << (s + 1)) - 1)
        closing = nbr[s]
        path = [s]
        # explicit stack of (vertex, remaining candidate mask)
        stack = [nbr[s] & allowed]
        visited = 1 << s
        while stack:
            cand = stack[-1]
            if not cand:
                stack.pop()
                v = path.pop()
                visited &= ~(1 << v)
                continue
            low = cand & -cand
            stack[-1] = cand ^ low
            w = low.bit_length() - 1
            path.append(w)
            visited |= low
            if len(path) >= 3 and closing & low and path[1] < w:
                if parity is None or len(path) % 2 == parity:
                    yield tuple(verts[i] for i in path)
            stack.append(nbr[w] & allowed & ~visited)
        # path is [] here


def circuits(g: Graph, parity: int | None = None) -> list[EdgeCycle]:
    return [EdgeCycle(c) for c in iter_circuits(g, parity)]


def girth(g: Graph) -> int | None:
    """Length of a shortest circuit, None for forests."""
    best = None
    for s in g.vertices:
        dist = {s: 0}
        parent = {s: None}
        dq = deque([s])
        while dq:
            u = dq.popleft()
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    dq.append(w)
                elif parent[u] != w:
                    length = dist[u] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def induced_circuit_vertex_sets(g: Graph, parity: int | None = None) -> list[frozenset[int]]:
    """Vertex sets of chordless circuits, deduplicated, in canonical order."""
    out = set()
    for c in iter_circuits(g, parity):
        k = len(c)
        cs = set(c)
        if sum(len(g.adj[v] & cs) for v in c) == 2 * k:
            out.add(frozenset(c))
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def circuit_vertex_sets(g: Graph, parity: int | None = None) -> list[frozenset[int]]:
    """Vertex sets of all circuits (chorded or not), deduplicated."""
    out = {frozenset(c) for c in iter_circuits(g, parity)}
    return sorted(out, key=lambda s: (len(s), sorted(s)))


# -- orientations -------------------------------------------------------------


@dataclass(frozen=True)
class Orientation:
    """A direction for every edge of a host graph, stored as arcs."""

    arcs: frozenset[Arc]

    def __post_init__(self):
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        und = [edge(u, v) for u, v in arcs]
        if len(set(und)) != len(und):
            raise GraphError("an edge is oriented both ways")
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def from_arcs(cls, arcs: Iterable[Arc]) -> "Orientation":
        return cls(frozenset(arcs))

    @classmethod
    def default(cls, g: Graph) -> "Orientation":
        """Every edge directed from its smaller to its larger endpoint."""
        return cls(frozenset(g.edges))

    @cached_property
    def _dir(self) -> dict[Edge, Arc]:
        return {edge(u, v): (u, v) for u, v in self.arcs}

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(self._dir)

    def arc(self, e: Edge) -> Arc:
        try:
            return self._dir[edge(*e)]
        except KeyError:
            raise GraphError(f"edge {e} is not oriented") from None

    def agrees(self, u: int, v: int) -> bool:
        """True if the edge uv is directed from u to v."""
        return self.arc((u, v)) == (u, v)

    def check_host(self, g: Graph) -> None:
        if self.edges != g.edges:
            raise GraphError("orientation domain differs from the graph's edge set")

    def restrict(self, es: Iterable[Edge]) -> "Orientation":
        return Orientation(frozenset(self.arc(e) for e in es))

    def reverse(self, *es: Edge) -> "Orientation":
        flip = {edge(*e) for e in es}
        return Orientation(frozenset((v, u) if edge(u, v) in flip else (u, v) for u, v in self.arcs))

    def outdeg(self) -> dict[int, int]:
        d: dict[int, int] = {}
        for u, v in self.arcs:
            d[u] = d.get(u, 0) + 1
            d.setdefault(v, 0)
        return d

    def indeg(self) -> dict[int, int]:
        d: dict[int, int] = {}
        for u, v in self.arcs:
            d[v] = d.get(v, 0) + 1
            d.setdefault(u, 0)
        return d


# -- walk and path decomposition in oriented graphs ------------------------------


def _check_in_or_out_one(host: Orientation) -> None:
    ind, outd = host.indeg(), host.outdeg()
    bad = [v for v in ind if ind[v] != 1 and outd[v] != 1]
    if bad:
        raise GraphError(f"vertices with indegree and outdegree both != 1: {sorted(bad)}")


def decompose_walk(steps: Sequence[Arc], host: Orientation) -> tuple[list[Arc], list[list[Arc]]]:
    """Split a directed walk into a directed path and directed circuits.

    ``host`` must give every vertex indegree 1 or outdegree 1; the walk must
    start at a vertex of outdegree 1 and end at one of indegree 1.  The mod-2
    sum of the steps equals path + sum of circuits, and the step set equals the
    union of path and circuits.
    """
    steps = [tuple(a) for a in steps]
    if not steps:
        raise GraphError("empty walk")
    _check_in_or_out_one(host)
    for a in steps:
        if host.arc(a) != a:
            raise GraphError(f"step {a} runs against the host orientation")
    for a, b in zip(steps, steps[1:]):
        if a[1] != b[0]:
            raise GraphError(f"steps {a} and {b} are not consecutive")
    if host.outdeg()[steps[0][0]] != 1:
        raise GraphError("walk must start at a vertex of outdegree 1")
    if host.indeg()[steps[-1][1]] != 1:
        raise GraphError("walk must end at a vertex of indegree 1")

    work = list(steps)
    found: list[list[Arc]] = []
    while True:
        first: dict[Arc, int] = {}
        cut = None
        for j, a in enumerate(work):
            if a in first:
                cut = (first[a], j)
                break
            first[a] = j
        if cut is None:
            return work, found
        i, j = cut
        found.append(work[i:j])
        del work[i:j]


def decompose_two_paths(p: Sequence[int], q: Sequence[int]) -> list[tuple[int, ...]]:
    """Circuits whose sum is P + Q and whose union is P ∪ Q.

    ``p`` is the vertex sequence of a directed path from x to y and ``q`` one
    from y to x.  Returned circuits are cyclic vertex tuples.
    """
    p, q = list(p), list(q)
    if len(p) < 2 or len(q) < 2 or p[0] != q[-1] or p[-1] != q[0]:
        raise GraphError("paths must run x -> y and y -> x")
    for path in (p, q):
        if len(set(path)) != len(path):
            raise GraphError("a path repeats a vertex")
    parcs = set(zip(p, p[1:]))
    for u, v in zip(q, q[1:]):
        if (v, u) in parcs:
            raise GraphError(f"paths traverse edge {edge(u, v)} in opposite directions")
    return _two_paths(p, q)


def _two_paths(p: list[int], q: list[int]) -> list[tuple[int, ...]]:
    pset = set(p)
    if len(pset & set(q)) == 2:
        return [tuple(p + q[1:-1])]
    ppos = {v: i for i, v in enumerate(p)}
    parcs = set(zip(p, p[1:]))
    # last vertex of Q before x lying on P
    ib = max(i for i, v in enumerate(q[:-1]) if v in pset)
    b = q[ib]
    # a: head of the last edge of Q[y, b] outside P
    t = max(i for i in range(ib) if (q[i], q[i + 1]) not in parcs)
    ia = t + 1
    a = q[ia]
    circuit = tuple(p[: ppos[b] + 1] + q[ib + 1 : -1])
    return _two_paths(p[ppos[a] :], q[: ia + 1]) + [circuit]


# -- isomorphism ---------------------------------------------------------------


def _refined_colours(*graphs: Graph, rounds: int | None = None) -> list[dict[int, int]]:
    """Colour refinement run jointly so colours are comparable across graphs."""
    cols = [{v: len(g.adj[v]) for v in g.vertices} for g in graphs]
    limit = rounds if rounds is not None else max((g.n for g in graphs), default=0)
    for _ in range(limit):
        sigs = [
            {v: (c[v], tuple(sorted(c[w] for w in g.adj[v]))) for v in g.vertices}
            for g, c in zip(graphs, cols)
        ]
        table = {s: i for i, s in enumerate(sorted({s for sg in sigs for s in sg.values()}))}
        new = [{v: table[s[v]] for v in s} for s in sigs]
        if all(len(set(a.values())) == len(set(b.values())) for a, b in zip(cols, new)):
            cols = new
            break
        cols = new
    return cols


def find_isomorphism(g: Graph, h: Graph) -> dict[int, int] | None:
    """Return a vertex bijection g -> h preserving adjacency, or None.

    Backtracking over refined colour classes; vertices of g are taken in a
    connectivity-first, smallest-id order and candidates in increasing id, so
    the result is deterministic.
    """
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(g.degrees().values()) != sorted(h.degrees().values()):
        return None
    cg, ch = _refined_colours(g, h)
    if sorted(cg.values()) != sorted(ch.values()):
        return None
    by_colour: dict[int, list[int]] = {}
    for v in h.vertices:
        by_colour.setdefault(ch[v], []).append(v)

    order: list[int] = []
    placed: set[int] = set()
    while len(order) < g.n:
        best = min(
            (v for v in g.vertices if v not in placed),
            key=lambda v: (-len(g.adj[v] & placed), len(by_colour[cg[v]]), v),
        )
        order.append(best)
        placed.add(best)

    fwd: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        mapped_nbrs = [fwd[w] for w in g.adj[v] if w in fwd]
        mapped_non = [fwd[w] for w in fwd if w not in g.adj[v]]
        for x in by_colour[cg[v]]:
            if x in used:
                continue
            if all(y in h.adj[x] for y in mapped_nbrs) and not any(y in h.adj[x] for y in mapped_non):
                fwd[v] = x
                used.add(x)
                if extend(i + 1):
                    return True
                del fwd[v]
                used.discard(x)
        return False

    return dict(fwd) if extend(0) else None


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


def invariant_key(g: Graph) -> tuple:
    """Isomorphism invariant used to bucket graphs before exact comparison."""
    (cols,) = _refined_colours(g, rounds=3)
    tri = []
    for v in g.vertices:
        nb = g.adj[v]
        tri.append(sum(len(g.adj[w] & nb) for w in nb) // 2)
    per_vertex = sorted((cols[v], tri[i]) for i, v in enumerate(g.vertices))
    return (g.n, g.m, tuple(per_vertex))
