"""Near-bipartite certificates and reference orientations of bipartite graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import GraphError
from .graph import Bipartition, Edge, Graph, Orientation, bipartition, edge
from .matching import AlternatingCircuit, OneFactor, alternating_circuits, enumerate_one_factors, is_one_extendible, is_one_factor
from .pfaffian import clockwise_parity, EVEN, find_pfaffian_orientation, is_pfaffian_orientation


@dataclass(frozen=True)
class NearBipartiteCertificate:
    e1: Edge
    e2: Edge
    bipartition: Bipartition
    factor: OneFactor

    def to_json(self, g: Graph | None = None) -> dict:
        lab = g.label if g is not None else str
        return {
            "edges": [[lab(x) for x in self.e1], [lab(x) for x in self.e2]],
            "M": sorted(lab(v) for v in self.bipartition.M),
            "N": sorted(lab(v) for v in self.bipartition.N),
            "factor": [[lab(x) for x in e] for e in sorted(self.factor)],
        }


def find_near_bipartite_pairs(g: Graph) -> list[NearBipartiteCertificate]:
    """Every pair {e1, e2} with g - {e1, e2} bipartite and 1-extendible.

    Empty unless g itself is 1-extendible and not bipartite.
    """
    if g.m < 2 or bipartition(g) is not None or not is_one_extendible(g)[0]:
        return []
    out = []
    for e1, e2 in itertools.combinations(g.sorted_edges, 2):
        h = g.delete_edges([e1, e2])
        bip = bipartition(h)
        if bip is None:
            continue
        factors = enumerate_one_factors(h)
        if not factors or not is_one_extendible(h)[0]:
            continue
        out.append(NearBipartiteCertificate(e1, e2, bip, factors[0]))
    return out


def is_near_bipartite(g: Graph) -> bool:
    return bool(find_near_bipartite_pairs(g))


def reference_orientation(h: Graph, b: Bipartition, f: OneFactor) -> Orientation:
    """Orient f from M to N and every other edge from N to M."""
    if set(b.M) | set(b.N) != set(h.vertices) or set(b.M) & set(b.N):
        raise GraphError("bipartition does not partition the vertex set")
    if not is_one_factor(h, f):
        raise GraphError("not a 1-factor of the graph")
    arcs = []
    for u, v in h.edges:
        if (u in b.M) == (v in b.M):
            raise GraphError(f"edge {(u, v)} does not cross the bipartition")
        m_end, n_end = (u, v) if u in b.M else (v, u)
        arcs.append((m_end, n_end) if (u, v) in f else (n_end, m_end))
    return Orientation.from_arcs(arcs)


def extend_orientation(o: Orientation, *extra: Edge) -> Orientation:
    """Add edges directed from the smaller to the larger endpoint."""
    return Orientation(o.arcs | {edge(*e) for e in extra})


def extended_pfaffian_orientation(g: Graph, cert: NearBipartiteCertificate) -> Orientation:
    h = g.delete_edges([cert.e1, cert.e2])
    o = find_pfaffian_orientation(h)
    if o is None:
        raise GraphError("g - {e1, e2} is not Pfaffian")
    return extend_orientation(o, cert.e1, cert.e2)


def find_opposite_parity_pair(
    g: Graph, cert: NearBipartiteCertificate, o: Orientation
) -> tuple[AlternatingCircuit, AlternatingCircuit] | None:
    """Two factor-alternating circuits through e1 and e2 of opposite clockwise parity.

    The first returned circuit is clockwise even.  None when all such
    circuits have the same parity, which happens exactly when g is Pfaffian.
    """
    o.check_host(g)
    h = g.delete_edges([cert.e1, cert.e2])
    if not is_pfaffian_orientation(h, o.restrict(h.edges)):
        raise GraphError("orientation restricted to g - {e1, e2} is not Pfaffian")
    even = odd = None
    for a in alternating_circuits(g, cert.factor, check=False):
        has1, has2 = cert.e1 in a.edges, cert.e2 in a.edges
        if has1 != has2:
            raise GraphError("an alternating circuit contains only one of e1, e2")
        if not has1:
            continue
        if clockwise_parity(a.cycle, o) == EVEN:
            even = even or a
        else:
            odd = odd or a
        if even and odd:
            return even, odd
    return None
