"""The ``pf`` command.

Exit status: 0 success, 1 when the answer is negative (non-Pfaffian, nothing
found), 2 for usage and input errors, 3 when a search budget runs out.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Iterable

from .characterize import (
    SearchBounds,
    find_witness,
    is_even_subdivision,
    is_reducible_to_even_subdivision,
    verify_witness,
)
from .errors import BudgetExceeded, FormatError, GraphError
from .fixtures import BUILTINS, TARGETS, builtin, target_graph
from .formats import format_graph, format_orientation, parse_graph, parse_orientation
from .graph import Edge, Graph, Orientation, edge, subdivide_edge
from .matching import central_circuits, enumerate_one_factors
from .nearbip import extended_pfaffian_orientation, find_near_bipartite_pairs, find_opposite_parity_pair
from .pfaffian import clockwise_parity, find_intractable_set, find_pfaffian_orientation, sign_table
from .verify import verify_paper

OK, NO, USAGE, BUDGET = 0, 1, 2, 3

SUBCOMMANDS = ("matchings", "signs", "parity", "check", "nearbip", "witness", "reduce", "subdivide", "verify-paper")


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pf", description="Pfaffian orientations and near-bipartite graphs.")
    p.add_argument("subcommand", choices=SUBCOMMANDS)
    p.add_argument("input", nargs="?", help="graph file or builtin:<name>")
    p.add_argument("--orientation", metavar="FILE", help="orientation file (a <origin> <terminus> lines)")
    p.add_argument("--target", choices=TARGETS, help="reduction or subdivision target")
    p.add_argument("--max-depth", type=_positive, help="maximum number of reduction steps")
    p.add_argument("--budget", type=_positive, help="search node budget")
    p.add_argument("--subset-bound", type=_positive, help="largest vertex set (witness) or circuit set (parity) tried")
    p.add_argument("--edge", help="edge to subdivide, as U,V")
    p.add_argument("--length", type=_positive, help="length of the path replacing --edge")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes for the witness search")
    return p


# -- input ---------------------------------------------------------------------


def load_input(source: str) -> tuple[Graph, Orientation | None]:
    if source.startswith("builtin:"):
        name = source.split(":", 1)[1]
        if name not in BUILTINS:
            raise UsageError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
        fx = builtin(name)
        return fx.graph, fx.orientation
    try:
        text = Path(source).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror or exc}") from None
    return parse_graph(text), None


def load_orientation(path: str, g: Graph) -> Orientation:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse_orientation(text, g)


def _vertex(g: Graph, tok: str) -> int:
    if tok in g.label_map.values():
        return g.vertex_by_label(tok)
    try:
        v = int(tok)
    except ValueError:
        raise UsageError(f"unknown vertex {tok!r}") from None
    if v not in g.adj:
        raise UsageError(f"unknown vertex {tok!r}")
    return v


# -- rendering ---------------------------------------------------------------------


def _short(g: Graph) -> bool:
    return all(len(g.label(v)) == 1 for v in g.vertices)


def fmt_pair(g: Graph, u: int, v: int) -> str:
    return f"{g.label(u)}{g.label(v)}" if _short(g) else f"{g.label(u)}-{g.label(v)}"


def fmt_edges(g: Graph, es: Iterable[Edge], o: Orientation | None = None) -> str:
    pairs = [o.arc(e) if o is not None else e for e in sorted(es)]
    return " ".join(fmt_pair(g, u, v) for u, v in pairs)


def fmt_cycle(g: Graph, vs: Iterable[int]) -> str:
    return " ".join(g.label(v) for v in vs)


def js_edges(g: Graph, es: Iterable[Edge]) -> list[list[str]]:
    return [[g.label(u), g.label(v)] for u, v in sorted(es)]


def js_arcs(g: Graph, o: Orientation) -> list[list[str]]:
    return [[g.label(u), g.label(v)] for u, v in sorted(o.arcs)]


class Out:
    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout
        self.data: dict = {}

    def line(self, text: str = "") -> None:
        if not self.as_json:
            print(text, file=self.stream)

    def flush(self) -> None:
        if self.as_json:
            print(json.dumps(self.data, sort_keys=True), file=self.stream)


# -- subcommands ---------------------------------------------------------------------


def _orientation(args, g: Graph, fixture_o: Orientation | None) -> Orientation:
    if args.orientation:
        return load_orientation(args.orientation, g)
    return fixture_o if fixture_o is not None else Orientation.default(g)


def cmd_matchings(args, g, fo, out: Out) -> int:
    fs = enumerate_one_factors(g)
    out.data = {"count": len(fs), "factors": [js_edges(g, f) for f in fs]}
    for i, f in enumerate(fs, 1):
        out.line(f"f{i}: {fmt_edges(g, f, fo)}")
    out.line(f"{len(fs)} 1-factors")
    return OK if fs else NO


def cmd_signs(args, g, fo, out: Out) -> int:
    o = _orientation(args, g, fo)
    factors = enumerate_one_factors(g)
    if not factors:
        raise GraphError("graph has no 1-factor")
    if args.input.startswith("builtin:"):
        factors = list(builtin(args.input.split(":", 1)[1]).factors)
    table = sign_table(g, o, base=factors[0])
    sign = dict(table.rows)
    rows = [(f, sign[f]) for f in factors]
    out.data = {
        "constant": table.is_constant(),
        "rows": [{"factor": js_edges(g, f), "sign": s} for f, s in rows],
    }
    width = len(f"f{len(rows)}")
    for i, (f, s) in enumerate(rows, 1):
        out.line(f"{f'f{i}':<{width}}  {'+' if s > 0 else '-'}  {fmt_edges(g, f, o)}")
    out.line("constant sign" if table.is_constant() else "mixed signs")
    return OK


def cmd_parity(args, g, fo, out: Out) -> int:
    o = _orientation(args, g, fo)
    circuits = central_circuits(g)
    rows = [(c, clockwise_parity(c, o)) for c in circuits]
    even = [c for c, p in rows if p == 0]
    out.data = {
        "circuits": [{"vertices": [g.label(v) for v in c.vertices], "clockwise": "even" if p == 0 else "odd"} for c, p in rows],
        "pfaffian_orientation": not even,
    }
    for c, p in rows:
        out.line(f"{'even' if p == 0 else 'odd ':<4}  {fmt_cycle(g, c.vertices)}")
    out.line(f"{len(circuits)} central circuits, {len(even)} clockwise even")
    if not even:
        out.line("orientation is Pfaffian")
        return OK
    bound = args.subset_bound or 8
    kw = {"size_bound": bound}
    if args.budget:
        kw["node_budget"] = args.budget
    s = find_intractable_set(g, o, **kw)
    if s is None:
        out.line("orientation is not Pfaffian; a reorientation can fix it")
        out.data["intractable_set"] = None
    else:
        out.line(f"orientation is not Pfaffian; no orientation is (intractable set of {len(s.circuits)} circuits):")
        for c, ev in zip(s.circuits, s.clockwise_even):
            out.line(f"  {'even' if ev else 'odd '}  {fmt_cycle(g, c.vertices)}")
        out.data["intractable_set"] = [[g.label(v) for v in c.vertices] for c in s.circuits]
    return NO


def cmd_check(args, g, fo, out: Out) -> int:
    o = find_pfaffian_orientation(g)
    out.data = {"pfaffian": o is not None, "orientation": js_arcs(g, o) if o else None}
    if o is None:
        out.line("non-Pfaffian")
        return NO
    out.line("Pfaffian")
    out.line(format_orientation(o).rstrip("\n"))
    return OK


def cmd_nearbip(args, g, fo, out: Out) -> int:
    certs = find_near_bipartite_pairs(g)
    out.data = {"near_bipartite": bool(certs), "certificates": [c.to_json(g) for c in certs]}
    if not certs:
        out.line("not near-bipartite")
        return NO
    out.line(f"near-bipartite: {len(certs)} pair(s)")
    for c in certs:
        out.line(f"  remove {fmt_pair(g, *c.e1)} {fmt_pair(g, *c.e2)}   M = {' '.join(g.label(v) for v in c.bipartition.M)}")
    cert = certs[0]
    o = extended_pfaffian_orientation(g, cert)
    pair = find_opposite_parity_pair(g, cert, o)
    if pair is None:
        out.line("all alternating circuits through both edges have the same clockwise parity")
        out.data["opposite_parity_pair"] = None
    else:
        a, b = pair
        out.line(f"clockwise even: {fmt_cycle(g, a.cycle.vertices)}")
        out.line(f"clockwise odd:  {fmt_cycle(g, b.cycle.vertices)}")
        out.data["opposite_parity_pair"] = {
            "even": [g.label(v) for v in a.cycle.vertices],
            "odd": [g.label(v) for v in b.cycle.vertices],
        }
    return OK


def _bounds(args) -> SearchBounds:
    kw = {"jobs": args.jobs, "max_depth": args.max_depth, "max_subset": args.subset_bound}
    if args.budget:
        kw["node_budget"] = args.budget
        kw["max_subgraphs"] = args.budget
    return SearchBounds(**kw)


def cmd_witness(args, g, fo, out: Out) -> int:
    w = find_witness(g, _bounds(args))
    if w is None:
        out.data = {"witness": None}
        out.line("no witness")
        return NO
    ok, why = verify_witness(g, w, cross_check=False)
    if not ok:
        raise GraphError(f"internal error: witness failed verification: {why}")
    out.data = {"witness": w.to_json()}
    out.line(f"witness: J on {len(Graph.from_edges(w.J).vertices)} vertices, {len(w.J)} edges, target {w.target}")
    out.line(f"  J: {fmt_edges(g, w.J)}")
    for i, s in enumerate(w.steps, 1):
        out.line(f"  step {i}: contract {fmt_cycle(g, s.circuit.vertices)}" + ("  (merges parallel edges)" if s.merged else ""))
    tg = target_graph(w.target)
    for (u, v), path in sorted(w.certificate.chains.items()):
        out.line(f"  chain {tg.label(u)}{tg.label(v)}: {fmt_cycle(g, path)}")
    out.line(f"  complement factor: {fmt_edges(g, w.complement_factor) or '(empty)'}")
    return OK


def cmd_reduce(args, g, fo, out: Out) -> int:
    target = args.target or "k33"
    kw = {"max_depth": args.max_depth}
    if args.budget:
        kw["budget"] = args.budget
    steps = is_reducible_to_even_subdivision(g, target, **kw)
    if steps is None:
        out.data = {"reducible": False, "target": target}
        out.line(f"not reducible to an even subdivision of {target}")
        return NO
    out.data = {"reducible": True, "target": target, "steps": [list(s.circuit.vertices) for s in steps]}
    out.line(f"reducible to an even subdivision of {target} in {len(steps)} step(s)")
    for i, s in enumerate(steps, 1):
        out.line(f"  step {i}: contract {fmt_cycle(g, s.circuit.vertices)}")
    return OK


def cmd_subdivide(args, g, fo, out: Out) -> int:
    if args.edge:
        if not args.length:
            raise UsageError("--edge needs --length")
        parts = args.edge.split(",")
        if len(parts) != 2:
            raise UsageError("--edge takes U,V")
        u, v = (_vertex(g, t) for t in parts)
        if not g.has_edge(u, v):
            raise UsageError(f"{args.edge} is not an edge")
        h = subdivide_edge(g, edge(u, v), args.length)
        if args.json:
            out.data = {"vertices": [[v, h.label(v)] for v in h.vertices], "edges": [list(e) for e in h.sorted_edges]}
        else:
            out.stream.write(format_graph(h))
        return OK
    target = args.target or "k33"
    cert = is_even_subdivision(g, target)
    if cert is None:
        out.data = {"even_subdivision": False, "target": target}
        out.line(f"not an even subdivision of {target}")
        return NO
    out.data = {
        "even_subdivision": True,
        "target": target,
        "chains": {f"{a}-{b}": [g.label(x) for x in p] for (a, b), p in sorted(cert.chains.items())},
    }
    out.line(f"even subdivision of {target}")
    for (a, b), p in sorted(cert.chains.items()):
        out.line(f"  {a}-{b}: {fmt_cycle(g, p)}")
    return OK


def cmd_verify_paper(args, out: Out) -> int:
    reports = verify_paper()
    out.data = {"ok": all(r.ok for r in reports), "reports": [r.to_json() for r in reports]}
    for r in reports:
        for line in r.lines():
            out.line(line)
    total = sum(len(r.checks) for r in reports)
    failed = sum(not ok for r in reports for _, ok, _ in r.checks)
    out.line(f"{total - failed}/{total} checks passed")
    return OK if failed == 0 else NO


HANDLERS = {
    "matchings": cmd_matchings,
    "signs": cmd_signs,
    "parity": cmd_parity,
    "check": cmd_check,
    "nearbip": cmd_nearbip,
    "witness": cmd_witness,
    "reduce": cmd_reduce,
    "subdivide": cmd_subdivide,
}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    out = Out(args.json, stdout)
    try:
        if args.subcommand == "verify-paper":
            code = cmd_verify_paper(args, out)
        else:
            if not args.input:
                raise UsageError(f"{args.subcommand} needs an input graph")
            g, fo = load_input(args.input)
            code = HANDLERS[args.subcommand](args, g, fo, out)
    except (UsageError, FormatError, GraphError) as exc:
        print(f"pf: error: {exc}", file=stderr)
        return USAGE
    except BudgetExceeded as exc:
        print(f"pf: budget exhausted: {exc}", file=stderr)
        return BUDGET
    out.flush()
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
