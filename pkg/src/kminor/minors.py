"""Exact minor containment for dense families and explicit target graphs.

A minor of ``g`` on ``t`` vertices is described by ``t`` disjoint connected
branch sets. Any unused vertex next to a branch set can be absorbed into it
without losing adjacencies, so it suffices to look at partitions of a union
of components of ``g`` into ``t`` connected parts. The search walks those
partitions as sequences of edge contractions (plus whole-component deletions
when the target may be disconnected), memoising dead quotient graphs by
canonical form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable

from ._kernels import contraction_children, quotient_feasible
from .canonical import canonical_key
from .graph import Graph, GraphError, bits, components, induces_connected
from .subgraph import find_embedding


class SearchBudgetExceeded(RuntimeError):
    """A bounded search ran out of nodes before reaching a decision."""


@dataclass(frozen=True)
class MinorTarget:
    """Either the family of K_t minus s edges, or an explicit graph."""

    t: int = 0
    s: int = 0
    graph: Graph | None = None

    def __post_init__(self) -> None:
        if self.graph is not None:
            if self.s:
                raise GraphError("family and explicit modes are exclusive")
            object.__setattr__(self, "t", self.graph.n)
        elif self.t < 1 or self.s < 0:
            raise GraphError("family target needs t >= 1 and s >= 0")

    @classmethod
    def family(cls, t: int, s: int) -> "MinorTarget":
        return cls(t=t, s=s)

    @classmethod
    def explicit(cls, h: Graph) -> "MinorTarget":
        return cls(graph=h)

    @property
    def is_family(self) -> bool:
        return self.graph is None

    def describe(self) -> dict:
        if self.graph is None:
            return {"t": self.t, "s": self.s}
        from .graph6 import to_string

        return {"graph6": to_string(self.graph)}


@dataclass(frozen=True)
class MinorModel:
    branch_sets: tuple[int, ...]
    missing_pairs: tuple[tuple[int, int], ...]

    def normalized(self) -> "MinorModel":
        """Branch sets sorted ascending (by member list), pairs re-indexed and sorted."""
        order = sorted(range(len(self.branch_sets)), key=lambda i: list(bits(self.branch_sets[i])))
        pos = {old: new for new, old in enumerate(order)}
        pairs = sorted(tuple(sorted((pos[a], pos[b]))) for a, b in self.missing_pairs)
        return MinorModel(tuple(self.branch_sets[i] for i in order), tuple(pairs))

    def to_record(self, normalize: bool = True) -> dict:
        """Report record; explicit-target models pass ``normalize=False`` to keep
        branch set i aligned with target vertex i."""
        m = self.normalized() if normalize else self
        return {
            "branch_sets": [list(bits(b)) for b in m.branch_sets],
            "missing_pairs": [list(p) for p in m.missing_pairs],
        }

    @classmethod
    def from_record(cls, rec: dict) -> "MinorModel":
        sets = tuple(sum(1 << v for v in b) for b in rec["branch_sets"])
        pairs = tuple((int(a), int(b)) for a, b in rec["missing_pairs"])
        return cls(sets, pairs)


@dataclass
class SearchStats:
    nodes: int = 0
    memo_hits: int = 0
    dead_states: int = 0
    heuristic_hit: bool = False
    notes: list[str] = field(default_factory=list)

    def to_record(self) -> dict:
        return {"nodes": self.nodes, "memo_hits": self.memo_hits, "dead_states": self.dead_states}


# -- model checking --------------------------------------------------------


def _sets_adjacent(g: Graph, a: int, b: int) -> bool:
    for v in bits(a):
        if g.adj[v] & b:
            return True
    return False


def verify_model(g: Graph, model: MinorModel, target: MinorTarget) -> tuple[bool, str]:
    """Check every model clause; the diagnostic names the first violated one."""
    sets = model.branch_sets
    if len(sets) != target.t:
        return False, "count"
    full = g.vertex_mask
    seen = 0
    for b in sets:
        if b == 0:
            return False, "nonempty"
        if b & ~full:
            return False, "range"
        if b & seen:
            return False, "disjointness"
        seen |= b
    for b in sets:
        if not induces_connected(g, b):
            return False, "connectivity"
    listed = set()
    for a, b in model.missing_pairs:
        if a == b or not (0 <= a < len(sets) and 0 <= b < len(sets)):
            return False, "missing_pairs"
        pair = (min(a, b), max(a, b))
        # the ledger lists exactly the non-adjacent pairs
        if pair in listed or _sets_adjacent(g, sets[a], sets[b]):
            return False, "missing_pairs"
        listed.add(pair)
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if (i, j) not in listed and not _sets_adjacent(g, sets[i], sets[j]):
                return False, "adjacency"
    if target.is_family:
        if len(listed) > target.s:
            return False, "missing_budget"
    else:
        h = target.graph
        for i, j in h.edges():
            if (i, j) in listed:
                return False, "realization"
    return True, "ok"


# -- quotient helpers ------------------------------------------------------


def _contract_rows(rows: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    """Contract quotient vertices i < j; merged vertex keeps index i."""
    low = (1 << j) - 1
    bi, bj = 1 << i, 1 << j
    out = []
    for v, row in enumerate(rows):
        if v == j:
            continue
        if v == i:
            row = (rows[i] | rows[j]) & ~(bi | bj)
        elif row & bj:
            row = (row & ~bj) | bi
        out.append((row & low) | (row >> (j + 1) << j))
    return tuple(out)


def _drop_vertices(rows: tuple[int, ...], mask: int) -> tuple[int, ...]:
    keep = [v for v in range(len(rows)) if not mask >> v & 1]
    pos = {v: k for k, v in enumerate(keep)}
    out = []
    for v in keep:
        r = 0
        for u in bits(rows[v] & ~mask):
            r |= 1 << pos[u]
        out.append(r)
    return tuple(out)


def _edge_total(rows: tuple[int, ...]) -> int:
    return sum(r.bit_count() for r in rows) // 2


def greedy_contraction(g: Graph, t: int) -> list[int] | None:
    """Contract lowest-degree vertices into their highest-degree neighbour.

    Isolated vertices are deleted. Returns the branch sets, or None when fewer
    than ``t`` vertices remain.
    """
    rows = g.adj
    parts = [1 << v for v in range(g.n)]
    while len(rows) > t:
        degs = [r.bit_count() for r in rows]
        v = min(range(len(rows)), key=lambda x: (degs[x], x))
        if degs[v] == 0:
            rows = _drop_vertices(rows, 1 << v)
            del parts[v]
            continue
        u = max(bits(rows[v]), key=lambda x: (degs[x], -x))
        i, j = min(u, v), max(u, v)
        parts[i] |= parts[j]
        del parts[j]
        rows = _contract_rows(rows, i, j)
    if len(rows) < t:
        return None
    return parts


# -- exhaustive search -----------------------------------------------------


class _Search:
    def __init__(
        self,
        t: int,
        need_edges: int,
        max_missing: int | None,
        accept: Callable[[tuple[int, ...]], object],
        allow_delete: bool,
        max_nodes: int | None,
        stats: SearchStats,
    ) -> None:
        self.t = t
        self.need_edges = need_edges
        self.max_missing = max_missing
        self.accept = accept
        self.allow_delete = allow_delete
        self.max_nodes = max_nodes
        self.stats = stats
        self.dead: set[bytes] = set()

    def feasible(self, rows: tuple[int, ...], edges: int) -> bool:
        limit = -1 if self.max_missing is None else self.max_missing
        return quotient_feasible(rows, edges, self.t, self.need_edges, limit, self.allow_delete)

    def run(self, rows: tuple[int, ...], parts: list[int]):
        self.stats.nodes += 1
        if self.max_nodes is not None and self.stats.nodes > self.max_nodes:
            raise SearchBudgetExceeded(f"minor search exceeded {self.max_nodes} nodes")
        m = len(rows)
        if m == self.t:
            got = self.accept(rows)
            return (parts, got) if got is not None else None
        limit = -1 if self.max_missing is None else self.max_missing
        for i, j, key in contraction_children(rows, self.t, self.need_edges, limit, self.allow_delete):
            if key in self.dead:
                self.stats.memo_hits += 1
                continue
            child = _contract_rows(rows, i, j)
            cparts = parts[:j] + parts[j + 1:]
            cparts[i] = parts[i] | parts[j]
            found = self.run(child, cparts)
            if found is not None:
                return found
            self.dead.add(key)
            self.stats.dead_states += 1
        if self.allow_delete:
            comps = components(Graph(m, rows))
            if len(comps) > 1:
                for comp in comps:
                    if m - comp.bit_count() < self.t:
                        continue
                    child = _drop_vertices(rows, comp)
                    if not self.feasible(child, _edge_total(child)):
                        continue
                    key = canonical_key(child)
                    if key in self.dead:
                        self.stats.memo_hits += 1
                        continue
                    cparts = [p for v, p in enumerate(parts) if not comp >> v & 1]
                    found = self.run(child, cparts)
                    if found is not None:
                        return found
                    self.dead.add(key)
                    self.stats.dead_states += 1
        return None


def _missing_pairs(rows: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    m = len(rows)
    return tuple((i, j) for i in range(m) for j in range(i + 1, m) if not rows[i] >> j & 1)


def _family_model(g: Graph, parts: list[int]) -> MinorModel:
    rows = []
    for a in parts:
        r = 0
        for k, b in enumerate(parts):
            if b != a and _sets_adjacent(g, a, b):
                r |= 1 << k
        rows.append(r)
    return MinorModel(tuple(parts), _missing_pairs(tuple(rows))).normalized()


def find_family_minor(
    g: Graph,
    t: int,
    s: int,
    *,
    max_nodes: int | None = None,
    stats: SearchStats | None = None,
    heuristic: bool = True,
    prune: bool = True,
) -> MinorModel | None:
    """A model of some member of K_t minus s edges in ``g``, or None (exact).

    ``prune=False`` switches off the edge-count fast path and every bound
    inside the search (used to cross-check those bounds).
    """
    stats = stats if stats is not None else SearchStats()
    need = comb(t, 2) - s
    if t < 1 or s < 0:
        raise GraphError(f"invalid target: t={t}, s={s}")
    if prune and (g.n < t or g.edge_count < need):
        return None
    if heuristic:
        parts = greedy_contraction(g, t)
        if parts is not None:
            model = _family_model(g, parts)
            if len(model.missing_pairs) <= s:
                stats.heuristic_hit = True
                return model

    def accept(rows):
        return True if comb(t, 2) - _edge_total(rows) <= s else None

    connected_only = s < t - 1  # a disconnected t-vertex graph misses >= t-1 edges
    if not prune:
        search = _Search(t, -comb(g.n + 1, 2), None, accept, not connected_only, max_nodes, stats)
    else:
        search = _Search(t, need, s, accept, not connected_only, max_nodes, stats)
    if connected_only:
        for comp in components(g):
            if comp.bit_count() < t:
                continue
            sub_vertices = list(bits(comp))
            sub = _drop_vertices(g.adj, g.vertex_mask & ~comp)
            if not search.feasible(sub, _edge_total(sub)):
                continue
            found = search.run(sub, [1 << v for v in sub_vertices])
            if found is not None:
                return _family_model(g, found[0])
        return None
    found = search.run(g.adj, [1 << v for v in range(g.n)])
    return _family_model(g, found[0]) if found is not None else None


def find_minor_of(
    g: Graph,
    h: Graph,
    *,
    max_nodes: int | None = None,
    stats: SearchStats | None = None,
) -> MinorModel | None:
    """A model of ``h`` as a minor of ``g`` (branch set i realises vertex i of h), or None."""
    stats = stats if stats is not None else SearchStats()
    t = h.n
    if t == 0:
        return MinorModel((), ())
    if g.n < t or g.edge_count < h.edge_count:
        return None

    def accept(rows):
        return find_embedding(h, Graph(len(rows), rows), spanning=True)

    h_comps = components(h)
    connected_only = len(h_comps) == 1
    search = _Search(t, h.edge_count, None, accept, not connected_only, max_nodes, stats)
    found = None
    if connected_only:
        for comp in components(g):
            if comp.bit_count() < t:
                continue
            sub = _drop_vertices(g.adj, g.vertex_mask & ~comp)
            if not search.feasible(sub, _edge_total(sub)):
                continue
            found = search.run(sub, [1 << v for v in bits(comp)])
            if found is not None:
                break
    else:
        found = search.run(g.adj, [1 << v for v in range(g.n)])
    if found is None:
        return None
    parts, phi = found
    sets = tuple(parts[phi[x]] for x in range(t))
    pairs = []
    for a in range(t):
        for b in range(a + 1, t):
            if not _sets_adjacent(g, sets[a], sets[b]):
                pairs.append((a, b))
    return MinorModel(sets, tuple(pairs))


def has_family_minor(g: Graph, t: int, s: int, **kw) -> bool:
    return find_family_minor(g, t, s, **kw) is not None
