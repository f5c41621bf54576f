"""Exhaustive lists of small connected graphs and seeded random graph families."""

from __future__ import annotations

import itertools
import random
from functools import lru_cache

from .graph import Graph, edge, find_isomorphism, invariant_key
from .matching import has_perfect_matching

# connected graphs on n unlabelled vertices, n = 1..10
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117, 9: 261080, 10: 11716571}


@lru_cache(maxsize=None)
def connected_graphs(n: int) -> tuple[Graph, ...]:
    """One representative of every isomorphism class of connected graphs on 0..n-1.

    Every connected graph has a vertex whose removal keeps it connected, so
    the classes on n vertices arise from those on n-1 by attaching a new
    vertex to a nonempty neighbour set.  Duplicates are removed by bucketing
    on an invariant and testing isomorphism inside each bucket.
    """
    if n < 1:
        return ()
    if n == 1:
        return (Graph((0,), frozenset()),)
    new = n - 1
    buckets: dict[tuple, list[Graph]] = {}
    out: list[Graph] = []
    for base in connected_graphs(n - 1):
        for k in range(1, n):
            for nbrs in itertools.combinations(range(n - 1), k):
                g = Graph(tuple(range(n)), base.edges | {edge(v, new) for v in nbrs})
                key = invariant_key(g)
                reps = buckets.setdefault(key, [])
                if any(find_isomorphism(g, r) is not None for r in reps):
                    continue
                reps.append(g)
                out.append(g)
    out.sort(key=lambda g: (g.m, g.sorted_edges))
    return tuple(out)


def matchable_census(max_n: int = 8) -> list[Graph]:
    """Connected graphs with a perfect matching on at most max_n vertices."""
    out = []
    for n in range(2, max_n + 1, 2):
        out.extend(g for g in connected_graphs(n) if has_perfect_matching(g))
    return out


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    """G(n, p) conditioned on connectivity by adding a random spanning tree first."""
    order = list(range(n))
    rng.shuffle(order)
    es = {edge(order[i], order[rng.randrange(i)]) for i in range(1, n)}
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            es.add(edge(u, v))
    return Graph(tuple(range(n)), frozenset(es))


def random_near_bipartite_candidate(rng: random.Random, half: int, p: float) -> Graph:
    """A bipartite graph with a perfect matching plus one edge inside each side.

    Sides are 0..half-1 and half..2*half-1; the returned graph still has to be
    filtered for near-bipartiteness.
    """
    left = list(range(half))
    right = list(range(half, 2 * half))
    es = {edge(left[i], right[i]) for i in range(half)}
    for u in left:
        for v in right:
            if rng.random() < p:
                es.add(edge(u, v))
    a, b = rng.sample(left, 2)
    c, d = rng.sample(right, 2)
    es.add(edge(a, b))
    es.add(edge(c, d))
    return Graph(tuple(range(2 * half)), frozenset(es))
