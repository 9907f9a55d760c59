"""Immutable simple graphs on at most 64 vertices.

Adjacency is stored as one integer bitmask per vertex: bit ``j`` of row ``i``
is set iff ``ij`` is an edge. Vertex sets throughout the package are plain
integer masks over vertex indices.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class GraphError(ValueError):
    """Raised for malformed graph input (loops, bad endpoints, size cap)."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_VERTICES:
            raise GraphError(f"vertex count {self.n} outside 0..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency row count does not match n")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {i} has bits beyond n")
            if row >> i & 1:
                raise GraphError(f"loop at vertex {i}")
            for j in bits(row):
                if not self.adj[j] >> i & 1:
                    raise GraphError(f"asymmetric adjacency at ({i}, {j})")

    # -- basic queries -------------------------------------------------
    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def neighbors(self, v: int) -> int:
        """Open neighbourhood N(v) as a mask."""
        return self.adj[v]

    def closed_neighbors(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges ``(i, j)`` with ``i < j`` in lexicographic order."""
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i] >> (i + 1) << (i + 1))]

    def missing_edges(self) -> list[tuple[int, int]]:
        """Non-adjacent pairs ``(i, j)``, ``i < j`` (the edges of the complement)."""
        return [(i, j) for i, j in combinations(range(self.n), 2) if not self.adj[i] >> j & 1]

    def is_clique(self, mask: int) -> bool:
        return all(self.adj[v] | (1 << v) | ~mask == -1 for v in bits(mask)) if mask else True

    def is_independent(self, mask: int) -> bool:
        return all(not self.adj[v] & mask for v in bits(mask))

    def to_networkx(self):
        import networkx as nx

        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, e={self.edge_count})"


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from an edge list; duplicate pairs collapse."""
    if not 0 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 0..{MAX_VERTICES}")
    rows = [0] * n
    for pair in edges:
        if len(pair) != 2:
            raise GraphError(f"edge {tuple(pair)} is not a vertex pair")
        i, j = pair
        if i == j:
            raise GraphError(f"loop at vertex {i}")
        if not (0 <= i < n and 0 <= j < n):
            raise GraphError(f"edge ({i}, {j}) out of range for n={n}")
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return Graph(n, tuple(rows))


def from_rows(rows: Sequence[int]) -> Graph:
    return Graph(len(rows), tuple(rows))


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << i) for i in range(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.n, tuple(full ^ row ^ (1 << i) for i, row in enumerate(g.adj)))


def permute(g: Graph, perm: Sequence[int]) -> Graph:
    """Relabel so that old vertex ``v`` becomes ``perm[v]``."""
    rows = [0] * g.n
    for v, row in enumerate(g.adj):
        m = 0
        for u in bits(row):
            m |= 1 << perm[u]
        rows[perm[v]] = m
    return Graph(g.n, tuple(rows))


def induced_subgraph(g: Graph, s: int) -> Graph:
    """Subgraph induced by the vertex mask ``s``, relabelled 0..|s|-1 in index order."""
    if s & ~g.vertex_mask:
        raise GraphError("vertex set out of range")
    keep = list(bits(s))
    pos = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        m = 0
        for u in bits(g.adj[v] & s):
            m |= 1 << pos[u]
        rows.append(m)
    return Graph(len(keep), tuple(rows))


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, g.vertex_mask & ~(1 << v))


def _squeeze(row: int, j: int) -> int:
    """Drop bit ``j`` from ``row`` and shift higher bits down by one."""
    low = row & ((1 << j) - 1)
    return low | (row >> (j + 1) << j)


def contract_edge(g: Graph, i: int, j: int) -> Graph:
    """Contract edge ``ij``; the merged vertex takes index ``min(i, j)``.

    Vertices above ``max(i, j)`` shift down by one. Parallel edges collapse.
    """
    if i == j or not g.has_edge(i, j):
        raise GraphError(f"({i}, {j}) is not an edge")
    if i > j:
        i, j = j, i
    merged = (g.adj[i] | g.adj[j]) & ~((1 << i) | (1 << j))
    rows = []
    for v in range(g.n):
        if v == j:
            continue
        if v == i:
            row = merged
        else:
            row = g.adj[v]
            if row >> j & 1:
                row = (row & ~(1 << j)) | (1 << i)
        rows.append(_squeeze(row, j))
    return Graph(g.n - 1, tuple(rows))


def add_edges(g: Graph, edges: Iterable[Sequence[int]]) -> Graph:
    return build_graph(g.n, list(g.edges()) + [tuple(e) for e in edges])


def remove_edges(g: Graph, edges: Iterable[Sequence[int]]) -> Graph:
    rows = list(g.adj)
    for i, j in edges:
        rows[i] &= ~(1 << j)
        rows[j] &= ~(1 << i)
    return Graph(g.n, tuple(rows))


def disjoint_union(g: Graph, h: Graph) -> Graph:
    return Graph(g.n + h.n, g.adj + tuple(row << g.n for row in h.adj))


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between the two sides."""
    gm, hm = g.vertex_mask, h.vertex_mask << g.n
    return Graph(g.n + h.n, tuple(r | hm for r in g.adj) + tuple((r << g.n) | gm for r in h.adj))


def components(g: Graph) -> list[int]:
    """Connected components as masks, ascending by minimum element."""
    out = []
    left = g.vertex_mask
    while left:
        comp = reach(g, left & -left, left)
        out.append(comp)
        left &= ~comp
    return out


def reach(g: Graph, start: int, within: int) -> int:
    """Vertices of ``within`` reachable from ``start`` inside ``g[within]``."""
    seen = start & within
    frontier = seen
    adj = g.adj
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    return g.n == 0 or reach(g, 1, g.vertex_mask) == g.vertex_mask


def induces_connected(g: Graph, mask: int) -> bool:
    return mask != 0 and reach(g, mask & -mask, mask) == mask
