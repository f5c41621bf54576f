"""Plain-text graph and orientation files.

Graph files hold ``v <id> [label]`` and ``e <id> <id>`` lines; orientation
files hold ``a <origin> <terminus>`` lines.  ``#`` starts a comment and
blank lines are skipped.  Endpoints may be written as integer ids or, when
the graph declares labels, as labels.  Vertices that only appear on edge
lines are declared implicitly.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import FormatError, GraphError
from .graph import Edge, Graph, Orientation, edge


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            yield no, body.split()


def _int(tok: str, no: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise FormatError(f"expected an integer vertex id, got {tok!r}", no) from None
    if v < 0:
        raise FormatError(f"negative vertex id {v}", no)
    return v


def parse_graph(text: str) -> Graph:
    vertices: dict[int, str | None] = {}
    by_label: dict[str, int] = {}
    edges: dict[Edge, int] = {}
    pending: list[tuple[int, str, str]] = []
    for no, toks in _lines(text):
        kind = toks[0]
        if kind == "v":
            if len(toks) not in (2, 3):
                raise FormatError("expected 'v <id> [label]'", no)
            v = _int(toks[1], no)
            if v in vertices:
                raise FormatError(f"vertex {v} declared twice", no)
            lab = toks[2] if len(toks) == 3 else None
            if lab is not None:
                if lab in by_label:
                    raise FormatError(f"label {lab!r} used twice", no)
                by_label[lab] = v
            vertices[v] = lab
        elif kind == "e":
            if len(toks) != 3:
                raise FormatError("expected 'e <id> <id>'", no)
            pending.append((no, toks[1], toks[2]))
        else:
            raise FormatError(f"unknown record type {kind!r}", no)

    def resolve(tok: str, no: int) -> int:
        if tok in by_label:
            return by_label[tok]
        v = _int(tok, no)
        vertices.setdefault(v, None)
        return v

    for no, a, b in pending:
        u, v = resolve(a, no), resolve(b, no)
        if u == v:
            raise FormatError(f"loop at vertex {u}", no)
        e = edge(u, v)
        if e in edges:
            raise FormatError(f"edge {u} {v} repeats line {edges[e]}", no)
        edges[e] = no
    labels = {v: s for v, s in vertices.items() if s is not None}
    return Graph(tuple(vertices), frozenset(edges), tuple(labels.items()))


def format_graph(g: Graph) -> str:
    out = []
    for v in g.vertices:
        lab = g.label_map.get(v)
        out.append(f"v {v} {lab}" if lab is not None else f"v {v}")
    out.extend(f"e {u} {v}" for u, v in g.sorted_edges)
    return "\n".join(out) + "\n"


def parse_orientation(text: str, g: Graph | None = None) -> Orientation:
    """Read arcs; with a host graph, labels are resolved and coverage is checked."""
    arcs: dict[Edge, tuple[int, int]] = {}
    labels = {s: v for v, s in g.labels} if g is not None else {}
    for no, toks in _lines(text):
        if toks[0] != "a":
            raise FormatError(f"unknown record type {toks[0]!r}", no)
        if len(toks) != 3:
            raise FormatError("expected 'a <origin> <terminus>'", no)
        u, v = (labels[t] if t in labels else _int(t, no) for t in toks[1:])
        if u == v:
            raise FormatError(f"loop at vertex {u}", no)
        e = edge(u, v)
        if e in arcs:
            raise FormatError(f"edge {u} {v} oriented twice", no)
        if g is not None and e not in g.edges:
            raise FormatError(f"arc {u} -> {v} is not an edge of the graph", no)
        arcs[e] = (u, v)
    o = Orientation.from_arcs(arcs.values())
    if g is not None:
        try:
            o.check_host(g)
        except GraphError as exc:
            raise FormatError(str(exc)) from None
    return o


def format_orientation(o: Orientation) -> str:
    return "".join(f"a {u} {v}\n" for u, v in sorted(o.arcs))


def edge_list_json(g: Graph, es: Iterable[Edge]) -> list[list[str]]:
    """Sorted edge list with endpoints rendered through the label map."""
    return [[g.label(u), g.label(v)] for u, v in sorted(es)]
