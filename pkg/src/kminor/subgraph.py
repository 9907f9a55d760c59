"""Subgraph embedding by backtracking with degree pruning."""
from __future__ import annotations

from .graph import Graph, bits


def _search_order(h: Graph) -> list[int]:
    """Greedy order: highest degree first, then most already-placed neighbours."""
    order: list[int] = []
    placed = 0
    left = h.vertex_mask
    while left:
        best, key = -1, None
        for v in bits(left):
            k = ((h.adj[v] & placed).bit_count(), h.degree(v), -v)
            if key is None or k > key:
                best, key = v, k
        order.append(best)
        placed |= 1 << best
        left &= ~(1 << best)
    return order


def find_embedding(h: Graph, g: Graph, spanning: bool = False) -> list[int] | None:
    """Injective map ``phi`` from V(h) to V(g) sending edges to edges, or None.

    With ``spanning=True`` the orders must match, which makes ``phi`` a
    bijection (h is then a spanning subgraph of g up to relabelling).
    """
    if h.n > g.n or (spanning and h.n != g.n):
        return None
    if h.edge_count > g.edge_count:
        return None
    hdeg = sorted(h.degrees(), reverse=True)
    gdeg = sorted(g.degrees(), reverse=True)
    if any(a > b for a, b in zip(hdeg, gdeg)):
        return None
    order = _search_order(h)
    gdegs = g.degrees()
    by_degree: dict[int, int] = {}
    for d in set(h.degrees()):
        by_degree[d] = sum(1 << v for v in range(g.n) if gdegs[v] >= d)
    phi = [-1] * h.n
    full = g.vertex_mask

    def extend(idx: int, used: int) -> bool:
        if idx == len(order):
            return True
        x = order[idx]
        cand = by_degree[h.degree(x)] & ~used
        for u in bits(h.adj[x]):
            if phi[u] >= 0:
                cand &= g.adj[phi[u]]
        cand &= full
        for y in bits(cand):
            phi[x] = y
            if extend(idx + 1, used | (1 << y)):
                return True
        phi[x] = -1
        return False

    return list(phi) if extend(0, 0) else None


def contains_spanning(g: Graph, h: Graph) -> bool:
    return find_embedding(h, g, spanning=True) is not None
