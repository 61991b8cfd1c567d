"""Partially q-colored graphs and the structural operations on them.

Vertices are dense integer IDs 0..n-1, colors are 1..q.  A "pin" fixes the
color of a vertex; unpinned vertices are free.  Graphs are immutable and
hashable, so results of exact computations can be cached per graph.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import GraphFormatError, InvalidRootError


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    if u == v:
        raise GraphFormatError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class PartiallyColoredGraph:
    """A graph with q colors and a partial pinning of vertices to colors."""

    n: int
    edges: tuple[tuple[int, int], ...]
    q: int
    pins: tuple[tuple[int, int], ...] = ()

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        q: int,
        pins: Mapping[int, int] | Iterable[tuple[int, int]] = (),
    ):
        if n < 0:
            raise GraphFormatError("negative vertex count")
        if q < 1:
            raise GraphFormatError("q must be a positive integer")
        norm = sorted({_normalize_edge(u, v) for u, v in edges})
        for u, v in norm:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u},{v}) out of range for n={n}")
        pin_items = sorted(dict(pins).items()) if not isinstance(pins, Mapping) else sorted(pins.items())
        for v, c in pin_items:
            if not 0 <= v < n:
                raise GraphFormatError(f"pinned vertex {v} out of range")
            if not 1 <= c <= q:
                raise GraphFormatError(f"pinned color {c} outside [1,{q}]")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(norm))
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "pins", tuple(pin_items))

    # -- basic structure ------------------------------------------------

    @property
    def pin_map(self) -> dict[int, int]:
        return dict(self.pins)

    @property
    def pinned_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.pins)

    @property
    def free_vertices(self) -> tuple[int, ...]:
        pinned = set(self.pinned_vertices)
        return tuple(v for v in range(self.n) if v not in pinned)

    def neighbors(self, v: int) -> tuple[int, ...]:
        out = []
        for a, b in self.edges:
            if a == v:
                out.append(b)
            elif b == v:
                out.append(a)
        return tuple(out)

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def max_degree(self) -> int:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return max(deg, default=0)

    def free_degree(self, v: int) -> int:
        pinned = set(self.pinned_vertices)
        return sum(1 for u in self.neighbors(v) if u not in pinned)

    def is_free(self, v: int) -> bool:
        return v not in set(self.pinned_vertices)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        adj = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def blocked_colors(self, v: int) -> set[int]:
        """Colors blocked at a free vertex v: colors pinned on a neighbor."""
        pm = self.pin_map
        return {pm[u] for u in self.neighbors(v) if u in pm}

    # -- derived graphs -------------------------------------------------

    def without_vertices(self, drop: Iterable[int]) -> tuple["PartiallyColoredGraph", dict[int, int]]:
        """Remove vertices, renumbering survivors densely.

        Returns the new graph and the old->new vertex map.
        """
        dropset = set(drop)
        remap = {}
        for v in range(self.n):
            if v not in dropset:
                remap[v] = len(remap)
        edges = [(remap[a], remap[b]) for a, b in self.edges if a not in dropset and b not in dropset]
        pins = {remap[v]: c for v, c in self.pins if v not in dropset}
        return PartiallyColoredGraph(len(remap), edges, self.q, pins), remap

    def with_pinned_leaf(self, v: int, color: int) -> "PartiallyColoredGraph":
        """Attach a fresh leaf pinned to `color` at vertex v."""
        if not 1 <= color <= self.q:
            raise GraphFormatError(f"color {color} outside [1,{self.q}]")
        pins = dict(self.pins)
        pins[self.n] = color
        return PartiallyColoredGraph(self.n + 1, list(self.edges) + [(v, self.n)], self.q, pins)


@dataclass(frozen=True)
class RootedGraph:
    """A partially colored graph with a distinguished free root vertex."""

    graph: PartiallyColoredGraph
    root: int

    def __post_init__(self):
        if not 0 <= self.root < self.graph.n:
            raise InvalidRootError(f"root {self.root} out of range")
        if not self.graph.is_free(self.root):
            raise InvalidRootError(f"root {self.root} is pinned")

    def in_class(self, delta: int) -> bool:
        """Membership in the class of connected graphs of max degree <= delta
        whose pinned vertices are all leaves and form an independent set."""
        g = self.graph
        if not g.is_connected() or g.max_degree() > delta:
            return False
        pinned = set(g.pinned_vertices)
        for v in pinned:
            if g.degree(v) != 1:
                return False
            (u,) = g.neighbors(v)
            if u in pinned:
                return False
        return True


@dataclass(frozen=True)
class BlockedColorVector:
    """Per-color counts of pinned neighbors of a root vertex."""

    counts: tuple[int, ...]

    @property
    def q(self) -> int:
        return len(self.counts)

    @property
    def num_blocked(self) -> int:
        return sum(1 for c in self.counts if c > 0)

    @property
    def total_pinned_neighbors(self) -> int:
        return sum(self.counts)

    def incremented(self, color: int) -> "BlockedColorVector":
        counts = list(self.counts)
        counts[color - 1] += 1
        return BlockedColorVector(tuple(counts))


# -- operations --------------------------------------------------------


def pin_to_leaves(g: PartiallyColoredGraph) -> PartiallyColoredGraph:
    """Split every pinned vertex of degree > 1 into one pinned leaf per
    incident edge.  The partition function is unchanged."""
    pm = g.pin_map
    if all(g.degree(v) <= 1 for v in pm):
        return g
    # Free vertices and degree<=1 pins keep their relative order; each edge
    # endpoint that is a pinned vertex of degree > 1 becomes a fresh leaf copy.
    pins: dict[int, int] = {}
    remap = {}
    for v in range(g.n):
        if v not in pm or g.degree(v) <= 1:
            remap[v] = len(remap)
    n_new = len(remap)
    for v, c in pm.items():
        if v in remap:
            pins[remap[v]] = c
    edges = []
    for a, b in g.edges:
        ends = []
        for x in (a, b):
            if x in remap:
                ends.append(remap[x])
            else:
                ends.append(n_new)
                pins[n_new] = pm[x]
                n_new += 1
        edges.append((ends[0], ends[1]))
    # Isolated pinned vertices of degree 0 survive via remap above.
    return PartiallyColoredGraph(n_new, edges, g.q, pins)


def blocked_color_vector(rg: RootedGraph) -> BlockedColorVector:
    """Count pinned neighbors of the root per color."""
    g = rg.graph
    pm = g.pin_map
    counts = [0] * g.q
    for u in g.neighbors(rg.root):
        if u in pm:
            counts[pm[u] - 1] += 1
    return BlockedColorVector(tuple(counts))


def attach_pinned_leaf(rg: RootedGraph, color: int) -> PartiallyColoredGraph:
    """The graph with one extra leaf pinned to `color` at the root."""
    return rg.graph.with_pinned_leaf(rg.root, color)


def strip_pinned_neighbors(rg: RootedGraph) -> RootedGraph:
    """Remove the pinned neighbors of the root (they must be leaves)."""
    g = rg.graph
    pm = g.pin_map
    drop = []
    for u in g.neighbors(rg.root):
        if u in pm:
            if g.degree(u) != 1:
                raise GraphFormatError(
                    f"pinned neighbor {u} of root is not a leaf; normalize with pin_to_leaves first"
                )
            drop.append(u)
    if not drop:
        return rg
    stripped, remap = g.without_vertices(drop)
    return RootedGraph(stripped, remap[rg.root])


def telescoping_decompose(
    rg: RootedGraph,
    l1: int,
    l2: int,
    order: Sequence[int] | None = None,
) -> list[tuple[RootedGraph, RootedGraph]]:
    """Decompose (G, v) into the per-neighbor rooted graphs whose single-leaf
    ratios multiply to the ratio at v.

    For neighbor i (in `order`) the first graph of the pair is G - v with a
    free leaf attached to neighbor i, earlier neighbors carrying an extra
    leaf pinned l2 and later ones an extra leaf pinned l1.  The second graph
    of the pair drops the free leaf.
    """
    if l1 == l2:
        raise GraphFormatError("the two reference colors must differ")
    g = rg.graph
    nbrs = g.neighbors(rg.root)
    if order is None:
        order = tuple(sorted(nbrs))
    if sorted(order) != sorted(nbrs):
        raise GraphFormatError("order must be a permutation of the root's neighborhood")
    base, remap = g.without_vertices([rg.root])
    out = []
    for i, vi in enumerate(order):
        hat = base
        for j, vj in enumerate(order):
            if j < i:
                hat = hat.with_pinned_leaf(remap[vj], l2)
            elif j > i:
                hat = hat.with_pinned_leaf(remap[vj], l1)
        bare = hat
        free_leaf = hat.n
        hat = PartiallyColoredGraph(
            hat.n + 1, list(hat.edges) + [(remap[vi], hat.n)], g.q, dict(hat.pins)
        )
        out.append((RootedGraph(hat, free_leaf), RootedGraph(bare, remap[vi])))
    return out


# -- edge-list text format ---------------------------------------------


def parse_graph_text(text: str) -> PartiallyColoredGraph:
    """Parse the edge-list format: "n q" header, "u v" edge lines, optional
    "pin u c" lines.  Blank lines and '#' comments are ignored."""
    n = q = None
    edges: list[tuple[int, int]] = []
    pins: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if n is None:
                if len(parts) != 2:
                    raise ValueError("expected header 'n q'")
                n, q = int(parts[0]), int(parts[1])
            elif parts[0] == "pin":
                if len(parts) != 3:
                    raise ValueError("expected 'pin u c'")
                pins[int(parts[1])] = int(parts[2])
            else:
                if len(parts) != 2:
                    raise ValueError("expected edge 'u v'")
                edges.append((int(parts[0]), int(parts[1])))
        except (ValueError, GraphFormatError) as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from exc
    if n is None:
        raise GraphFormatError("empty graph file")
    return PartiallyColoredGraph(n, edges, q, pins)


def format_graph(g: PartiallyColoredGraph) -> str:
    lines = [f"{g.n} {g.q}"]
    lines += [f"{u} {v}" for u, v in g.edges]
    lines += [f"pin {v} {c}" for v, c in g.pins]
    return "\n".join(lines) + "\n"
