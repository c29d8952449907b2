"""Immutable simple graphs on vertices 0..n-1 with bitset adjacency rows.

Vertex sets are plain Python ints used as bitmasks (bit v = vertex v), which
keeps every set operation a single machine-word-per-64-vertices instruction
and lets witnesses compare with ``<`` for deterministic tie-breaking.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence


class SizeLimitError(ValueError):
    """A vertex-count cap (Hall sweep, LP solver, miniature builder) was hit."""


def bits(mask: int) -> Iterator[int]:
    """Iterate set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph; ``adj[v]`` is the neighbor bitmask.

    Instances are immutable and safely shareable; all combinators build new
    graphs.  ``labels``, when present, carries one provenance string per
    vertex (compositions record which block a vertex came from).
    """

    n: int
    adj: tuple[int, ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be >= 0")
        if len(self.adj) != self.n:
            raise ValueError("adjacency row count differs from n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"adjacency row {v} mentions vertices >= n")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
        for v, row in enumerate(self.adj):
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({u},{v})")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("labels length differs from n")

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(row.bit_count() for row in self.adj))

    def edges(self) -> list[tuple[int, int]]:
        """Each edge once, as (u, v) with u < v, sorted."""
        out = []
        for v in range(self.n):
            lower = self.adj[v] & ((1 << v) - 1)
            for u in bits(lower):
                out.append((u, v))
        out.sort()
        return out

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def same_adjacency(self, other: "Graph") -> bool:
        return self.n == other.n and self.adj == other.adj

    def with_labels(self, labels: Sequence[str] | None) -> "Graph":
        return Graph(self.n, self.adj, None if labels is None else tuple(labels))


def new_graph(n: int, edges: Iterable[tuple[int, int]],
              labels: Sequence[str] | None = None) -> Graph:
    """Build a graph from an edge list; duplicates and orientation collapse."""
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise ValueError(f"loop edge ({u},{u}) rejected")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows), None if labels is None else tuple(labels))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle graph needs n >= 3")
    return new_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError("path graph needs n >= 1")
    return new_graph(n, [(i, i + 1) for i in range(n - 1)])


def kneser_graph(n: int, k: int) -> Graph:
    """Vertices are the k-subsets of {0..n-1} in lexicographic order,
    adjacent when disjoint.  Kneser(5,2) is the Petersen graph."""
    if not (1 <= k <= n):
        raise ValueError("kneser graph needs 1 <= k <= n")
    subsets = [mask_of(c) for c in combinations(range(n), k)]
    g_edges = []
    for i, a in enumerate(subsets):
        for j in range(i + 1, len(subsets)):
            if a & subsets[j] == 0:
                g_edges.append((i, j))
    labels = tuple(",".join(map(str, c)) for c in combinations(range(n), k))
    return new_graph(len(subsets), g_edges, labels)


def induced(g: Graph, subset: int) -> Graph:
    """Induced subgraph on the vertices of ``subset``, relabeled 0..|S|-1 in
    ascending original order."""
    if subset == 0:
        raise ValueError("induced subgraph needs a nonempty vertex set")
    if subset & ~g.vertex_mask():
        raise ValueError("vertex set is not a subset of V(G)")
    keep = list(bits(subset))
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for u in bits(g.adj[v] & subset):
            row |= 1 << pos[u]
        rows.append(row)
    labels = None if g.labels is None else tuple(g.labels[v] for v in keep)
    return Graph(len(keep), tuple(rows), labels)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask()
    return Graph(g.n, tuple((full ^ row ^ (1 << v)) for v, row in enumerate(g.adj)),
                 g.labels)


def is_triangle_free(g: Graph) -> bool:
    for v in range(g.n):
        lower = g.adj[v] & ((1 << v) - 1)
        for u in bits(lower):
            if g.adj[u] & g.adj[v]:
                return False
    return True


def count_triangles(adj: Sequence[int]) -> int:
    """Number of triangles given adjacency rows (each counted once)."""
    total = 0
    for v in range(len(adj)):
        lower = adj[v] & ((1 << v) - 1)
        for u in bits(lower):
            total += (adj[u] & adj[v]).bit_count()
    return total // 3


def components(g: Graph) -> list[int]:
    """Connected components as bitmasks, ordered by minimum element."""
    seen = 0
    out = []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = 1 << v
        frontier = 1 << v
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= g.adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(comp)
    return out


def is_connected_mask(g: Graph, subset: int) -> bool:
    """Whether the induced subgraph on ``subset`` is connected (empty: False)."""
    if subset == 0:
        return False
    start = subset & -subset
    comp = start
    frontier = start
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj[u]
        frontier = nxt & subset & ~comp
        comp |= frontier
    return comp == subset


# -- DIMACS .col ------------------------------------------------------------
#
# Canonical form: one `p edge <n> <m>` header, then each edge exactly once as
# `e <u> <v>` with 1-based u < v in sorted order.  Reading tolerates comment
# lines, duplicate edges and either orientation; writing always emits the
# canonical form, so write(read(write(G))) is bit-exact.

def format_dimacs(g: Graph) -> str:
    lines = [f"p edge {g.n} {g.m}"]
    for u, v in g.edges():
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def parse_dimacs(text: str) -> Graph:
    n = None
    edge_list: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        fields = line.split()
        if fields[0] == "p":
            if n is not None:
                raise ValueError(f"line {lineno}: duplicate problem line")
            if len(fields) != 4 or fields[1] != "edge":
                raise ValueError(f"line {lineno}: malformed problem line {line!r}")
            n = int(fields[2])
        elif fields[0] == "e":
            if n is None:
                raise ValueError(f"line {lineno}: edge before problem line")
            if len(fields) != 3:
                raise ValueError(f"line {lineno}: malformed edge line {line!r}")
            u, v = int(fields[1]) - 1, int(fields[2]) - 1
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"line {lineno}: endpoint out of range")
            if u == v:
                raise ValueError(f"line {lineno}: loop edge")
            edge_list.append((u, v))
        else:
            raise ValueError(f"line {lineno}: unknown record {fields[0]!r}")
    if n is None:
        raise ValueError("missing problem line")
    return new_graph(n, edge_list)


def write_dimacs(g: Graph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_dimacs(g))


def read_dimacs(path) -> Graph:
    with open(path) as fh:
        return parse_dimacs(fh.read())
