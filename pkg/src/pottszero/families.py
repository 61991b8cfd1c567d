"""Enumeration and construction of graph families for the verifiers.

Connected bounded-degree graphs are generated by incremental augmentation
(add a new vertex joined to a nonempty subset of the old ones) with
isomorphism rejection through networkx, bucketed by cheap invariants.
Pinned-leaf decorations are applied afterwards per policy.
"""

from __future__ import annotations

from itertools import combinations

import networkx as nx

from .errors import GraphFormatError
from .graphs import PartiallyColoredGraph, RootedGraph


def _to_nx(g: PartiallyColoredGraph) -> nx.Graph:
    G = nx.Graph()
    pm = g.pin_map
    for v in range(g.n):
        G.add_node(v, pin=pm.get(v, 0))
    G.add_edges_from(g.edges)
    return G


def _invariant(g: PartiallyColoredGraph):
    degs = [0] * g.n
    for a, b in g.edges:
        degs[a] += 1
        degs[b] += 1
    return (g.n, len(g.edges), tuple(sorted(degs)), tuple(sorted(c for _, c in g.pins)))


def _pin_match(a, b):
    return a["pin"] == b["pin"]


class _IsoDedup:
    """Keep one representative per isomorphism class, bucketed by cheap
    invariants so is_isomorphic only runs within a bucket."""

    def __init__(self):
        self._buckets: dict = {}

    def add(self, g: PartiallyColoredGraph) -> bool:
        key = _invariant(g)
        bucket = self._buckets.setdefault(key, [])
        G = _to_nx(g)
        for _, H in bucket:
            if nx.is_isomorphic(G, H, node_match=_pin_match):
                return False
        bucket.append((g, G))
        return True


def _base_graphs(n_max: int, delta: int) -> list[tuple[int, tuple]]:
    """All connected graphs up to isomorphism with <= n_max vertices and
    max degree <= delta, as (n, edges) pairs, by augmentation."""
    seen = _IsoDedup()
    out = []
    frontier = [(1, ())]
    k1 = PartiallyColoredGraph(1, (), 2)
    seen.add(k1)
    out.append((1, ()))
    while frontier:
        new_frontier = []
        for n, edges in frontier:
            if n == n_max:
                continue
            degs = [0] * n
            for a, b in edges:
                degs[a] += 1
                degs[b] += 1
            candidates = [v for v in range(n) if degs[v] < delta]
            for size in range(1, min(delta, len(candidates)) + 1):
                for subset in combinations(candidates, size):
                    new_edges = edges + tuple((v, n) for v in subset)
                    g = PartiallyColoredGraph(n + 1, new_edges, 2)
                    if seen.add(g):
                        out.append((n + 1, new_edges))
                        new_frontier.append((n + 1, new_edges))
        frontier = new_frontier
    return out


_PIN_POLICIES = ("none", "single", "patterns")


def enumerate_graphs(n_max: int, delta: int, q: int, pin_specs: str = "none"):
    """Yield connected graphs up to isomorphism with at most n_max vertices
    (pinned leaves included) and max degree at most delta.

    pin policies: "none" yields bare graphs; "single" additionally attaches
    one pinned leaf of color 1 at every inequivalent vertex; "patterns"
    attaches up to two pinned leaves with colors drawn from {1, 2, q},
    deduplicated up to color-preserving isomorphism.
    """
    if pin_specs not in _PIN_POLICIES:
        raise GraphFormatError(f"unknown pin policy {pin_specs!r}")
    bases = _base_graphs(n_max, delta)
    for n, edges in bases:
        yield PartiallyColoredGraph(n, edges, q)
    if pin_specs == "none":
        return
    colors = (1,) if pin_specs == "single" else tuple(sorted({1, 2, q}))
    max_pins = 1 if pin_specs == "single" else 2
    dedup = _IsoDedup()
    for n, edges in bases:
        stack = [(PartiallyColoredGraph(n, edges, q), 0)]
        while stack:
            g, npins = stack.pop()
            if npins >= max_pins or g.n >= n_max:
                continue
            degs = [0] * g.n
            for a, b in g.edges:
                degs[a] += 1
                degs[b] += 1
            for v in g.free_vertices:
                if degs[v] >= delta:
                    continue
                for c in colors:
                    decorated = g.with_pinned_leaf(v, c)
                    if dedup.add(decorated):
                        yield decorated
                        stack.append((decorated, npins + 1))


def rooted_family(graphs, delta: int, in_class_only: bool = True):
    """All (graph, free root) pairs of a family, optionally restricted to
    members of the connected bounded-degree class with leaf pins."""
    for g in graphs:
        for v in g.free_vertices:
            rg = RootedGraph(g, v)
            if not in_class_only or rg.in_class(delta):
                yield rg


# -- named constructions -----------------------------------------------


def generate_family(kind: str, q: int, **params) -> PartiallyColoredGraph:
    """Construct a named unpinned graph: cycle(n), clique(n), path(n),
    star(n), random_regular(n, d, seed), complete_bipartite(a, b),
    petersen()."""
    if kind == "cycle":
        n = params["n"]
        if n < 3:
            raise GraphFormatError("cycle needs n >= 3")
        edges = [(i, (i + 1) % n) for i in range(n)]
        return PartiallyColoredGraph(n, edges, q)
    if kind == "clique":
        n = params["n"]
        return PartiallyColoredGraph(n, list(combinations(range(n), 2)), q)
    if kind == "path":
        n = params["n"]
        return PartiallyColoredGraph(n, [(i, i + 1) for i in range(n - 1)], q)
    if kind == "star":
        n = params["n"]
        return PartiallyColoredGraph(n, [(0, i) for i in range(1, n)], q)
    if kind == "random_regular":
        n, d = params["n"], params["d"]
        seed = params.get("seed", 0)
        if (n * d) % 2:
            raise GraphFormatError("random regular graph needs n*d even")
        G = nx.random_regular_graph(d, n, seed=seed)
        return PartiallyColoredGraph(n, list(G.edges()), q)
    if kind == "complete_bipartite":
        a, b = params["a"], params["b"]
        edges = [(i, a + j) for i in range(a) for j in range(b)]
        return PartiallyColoredGraph(a + b, edges, q)
    if kind == "petersen":
        G = nx.petersen_graph()
        return PartiallyColoredGraph(10, list(G.edges()), q)
    raise GraphFormatError(f"unknown family kind {kind!r}")
