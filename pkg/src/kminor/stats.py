"""Exact graph invariants: clique and independence numbers, connectivity, colouring."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ._kernels import max_clique
from .graph import Graph, bits, complement


@dataclass(frozen=True)
class GraphStats:
    min_degree: int
    max_degree: int
    edge_count: int
    clique_number: int
    independence_number: int
    connectivity: int


def maximum_clique(g: Graph) -> int:
    """Mask of a maximum clique; ties resolved deterministically by index order."""
    return max_clique(g.adj)


def clique_number(g: Graph) -> int:
    return maximum_clique(g).bit_count()


def has_clique(g: Graph, k: int) -> bool:
    if k <= 0:
        return True
    return max_clique(g.adj, k - 1) != 0


def independence_number(g: Graph) -> int:
    return clique_number(complement(g))


def max_vertex_disjoint_paths(g: Graph, s: int, t: int, limit: int | None = None) -> int:
    """Number of internally vertex-disjoint s-t paths (s, t non-adjacent).

    Unit-capacity augmenting paths on the split graph: vertex v becomes
    v_in (2v) -> v_out (2v+1) with capacity 1 except at s and t.
    """
    n = g.n
    cap: dict[tuple[int, int], int] = {}
    out_arcs: list[list[int]] = [[] for _ in range(2 * n)]
    big = n + 1

    def arc(a: int, b: int, c: int) -> None:
        if (a, b) not in cap:
            out_arcs[a].append(b)
            out_arcs[b].append(a)
            cap[(b, a)] = cap.get((b, a), 0)
        cap[(a, b)] = cap.get((a, b), 0) + c

    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in g.edges():
        arc(2 * u + 1, 2 * v, big)
        arc(2 * v + 1, 2 * u, big)

    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while limit is None or flow < limit:
        prev = {source: source}
        dq = deque([source])
        while dq and sink not in prev:
            a = dq.popleft()
            for b in out_arcs[a]:
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    dq.append(b)
        if sink not in prev:
            break
        b = sink
        while b != source:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    return flow


def vertex_connectivity(g: Graph) -> int:
    """Vertex connectivity via Menger; complete graphs give n - 1."""
    n = g.n
    if n <= 1:
        return 0
    if g.edge_count == n * (n - 1) // 2:
        return n - 1
    best = n - 1
    i = 0
    # Some vertex among the first best+1 lies outside a minimum separator.
    while i <= best and i < n:
        non_nbrs = g.vertex_mask & ~g.adj[i] & ~((1 << (i + 1)) - 1)
        for j in bits(non_nbrs):
            best = min(best, max_vertex_disjoint_paths(g, i, j, limit=best))
            if best == 0:
                return 0
        i += 1
    return best


def graph_stats(g: Graph) -> GraphStats:
    degs = g.degrees()
    return GraphStats(
        min_degree=min(degs, default=0),
        max_degree=max(degs, default=0),
        edge_count=g.edge_count,
        clique_number=clique_number(g),
        independence_number=independence_number(g),
        connectivity=vertex_connectivity(g),
    )


def is_proper_coloring(g: Graph, coloring: list[int], k: int | None = None) -> bool:
    if len(coloring) != g.n:
        return False
    if k is not None and any(not 0 <= c < k for c in coloring):
        return False
    return all(coloring[i] != coloring[j] for i, j in g.edges())


def chromatic_at_most(g: Graph, k: int, max_nodes: int | None = None) -> list[int] | None:
    """A proper colouring with at most ``k`` colours, or ``None`` if none exists.

    DSATUR-ordered backtracking (saturation ties by ascending index) seeded
    with a maximum clique pre-coloured 0..omega-1. ``max_nodes`` bounds the
    search; exceeding it raises ``SearchBudgetExceeded``.
    """
    n = g.n
    if n == 0:
        return []
    if k <= 0:
        return None
    clique = maximum_clique(g)
    if clique.bit_count() > k:
        return None
    adj = g.adj
    color = [-1] * n
    # forbidden colour masks from coloured neighbours, kept as counters
    seen = [[0] * k for _ in range(n)]
    forb = [0] * n

    def assign(v: int, c: int) -> None:
        color[v] = c
        for u in bits(adj[v]):
            seen[u][c] += 1
            forb[u] |= 1 << c

    def unassign(v: int, c: int) -> None:
        color[v] = -1
        for u in bits(adj[v]):
            seen[u][c] -= 1
            if not seen[u][c]:
                forb[u] &= ~(1 << c)

    for c, v in enumerate(bits(clique)):
        assign(v, c)
    used0 = clique.bit_count()
    nodes = 0

    def pick() -> int:
        best, best_sat = -1, -1
        for v in range(n):
            if color[v] < 0:
                sat = forb[v].bit_count()
                if sat > best_sat:
                    best, best_sat = v, sat
        return best

    def solve(remaining: int, used: int) -> bool:
        nonlocal nodes
        if remaining == 0:
            return True
        nodes += 1
        if max_nodes is not None and nodes > max_nodes:
            from .minors import SearchBudgetExceeded

            raise SearchBudgetExceeded(f"colouring exceeded {max_nodes} nodes")
        v = pick()
        top = min(used + 1, k)
        for c in range(top):
            if forb[v] >> c & 1:
                continue
            assign(v, c)
            if solve(remaining - 1, max(used, c + 1)):
                return True
            unassign(v, c)
        return False

    if solve(n - used0, used0):
        return list(color)
    return None
