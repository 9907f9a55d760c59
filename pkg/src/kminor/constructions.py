"""Named graphs and families: K_t minus edges, cockades, the alpha-2 family, triple patterns."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from math import comb
from typing import Sequence

from . import graph6
from .canonical import canonical_form
from .enumeration import Filter, enumerate_graphs
from .graph import Graph, GraphError, bits, build_graph, complement, complete_graph, remove_edges
from .stats import independence_number

PATTERNS = {
    "minus1": ((0, 1),),
    "two_independent": ((0, 1), (2, 3)),
    "three_independent": ((0, 1), (2, 3), (4, 5)),
    "two_adjacent": ((0, 1), (0, 2)),
}


def complete_minus(t: int, pattern: str | Sequence[Sequence[int]]) -> Graph:
    """K_t with the edges of a named pattern (or an explicit edge list) removed."""
    if isinstance(pattern, str):
        if pattern not in PATTERNS:
            raise GraphError(f"unknown pattern {pattern!r}; expected one of {sorted(PATTERNS)}")
        edges = PATTERNS[pattern]
    else:
        edges = tuple(tuple(e) for e in pattern)
    for e in edges:
        if len(e) != 2 or e[0] == e[1] or not all(0 <= x < t for x in e):
            raise GraphError(f"pattern edge {e} does not fit in K_{t}")
    if len({frozenset(e) for e in edges}) != len(edges):
        raise GraphError("pattern repeats an edge")
    return remove_edges(complete_graph(t), edges)


def family_members(t: int, s: int) -> list[Graph]:
    """One canonical graph per class of K_t minus s edges, sorted by canonical form."""
    if not 0 <= s <= comb(t, 2):
        raise GraphError(f"cannot remove {s} edges from K_{t}")
    out = {}
    for f in enumerate_graphs(Filter(t, min_edges=s, max_edges=s)):
        h = complement(f)
        key = canonical_form(h)
        out[key] = graph6.decode(key)
    return [out[k] for k in sorted(out)]


# ---------------------------------------------------------------- cockades

@dataclass(frozen=True)
class GluingStep:
    """Glue a fresh copy of the base: ``host[i]`` is identified with ``base_clique[i]``."""

    host: tuple[int, ...]
    base_clique: tuple[int, ...]


@dataclass(frozen=True)
class CockadeSpec:
    base: Graph
    k: int
    shape: tuple[GluingStep, ...] = ()

    @property
    def blocks(self) -> int:
        return len(self.shape) + 1

    @classmethod
    def chain(cls, base: Graph, k: int, blocks: int) -> "CockadeSpec":
        """Each new copy glued onto the first k-clique of the previous copy."""
        if blocks < 1:
            raise GraphError("a cockade has at least one block")
        clique = first_clique(base, k)
        if clique is None:
            raise GraphError(f"base graph has no {k}-clique")
        steps = []
        n = base.n
        copy_map = list(range(base.n))
        for _ in range(blocks - 1):
            host = tuple(copy_map[v] for v in clique)
            steps.append(GluingStep(host, clique))
            fresh = [v for v in range(base.n) if v not in clique]
            copy_map = list(range(base.n))
            for i, v in enumerate(clique):
                copy_map[v] = host[i]
            for v in fresh:
                copy_map[v] = n
                n += 1
        return cls(base, k, tuple(steps))


def is_clique_tuple(g: Graph, verts: Sequence[int]) -> bool:
    if len(set(verts)) != len(verts) or not all(0 <= v < g.n for v in verts):
        return False
    mask = 0
    for v in verts:
        mask |= 1 << v
    return g.is_clique(mask)


def first_clique(g: Graph, k: int) -> tuple[int, ...] | None:
    for c in combinations(range(g.n), k):
        if is_clique_tuple(g, c):
            return c
    return None


def glue(g: Graph, base: Graph, host: Sequence[int], base_clique: Sequence[int]) -> Graph:
    """Identify the clique ``host`` of ``g`` with the clique ``base_clique`` of a fresh base copy."""
    if len(host) != len(base_clique):
        raise GraphError("gluing cliques differ in size")
    if not is_clique_tuple(g, host):
        raise GraphError(f"gluing target {tuple(host)} is not a clique of the current graph")
    if not is_clique_tuple(base, base_clique):
        raise GraphError(f"{tuple(base_clique)} is not a clique of the base graph")
    where = {}
    n = g.n
    for i, v in enumerate(base_clique):
        where[v] = host[i]
    for v in range(base.n):
        if v not in where:
            where[v] = n
            n += 1
    edges = list(g.edges()) + [(where[a], where[b]) for a, b in base.edges()]
    return build_graph(n, edges)


def build_cockade(spec: CockadeSpec) -> Graph:
    if first_clique(spec.base, spec.k) is None:
        raise GraphError(f"base graph has no {spec.k}-clique")
    g = spec.base
    for step in spec.shape:
        if len(step.host) != spec.k:
            raise GraphError(f"gluing step uses {len(step.host)} vertices, expected {spec.k}")
        g = glue(g, spec.base, step.host, step.base_clique)
    return g


def automorphisms(g: Graph) -> list[tuple[int, ...]]:
    """Every automorphism as an image tuple (backtracking; meant for small bases)."""
    n = g.n
    degs = g.degrees()
    image = [-1] * n
    used = 0
    out: list[tuple[int, ...]] = []

    def extend(v: int) -> None:
        nonlocal used
        if v == n:
            out.append(tuple(image))
            return
        for w in range(n):
            if used >> w & 1 or degs[w] != degs[v]:
                continue
            if all((g.adj[v] >> u & 1) == (g.adj[w] >> image[u] & 1) for u in range(v)):
                image[v] = w
                used |= 1 << w
                extend(v + 1)
                used &= ~(1 << w)
        image[v] = -1

    extend(0)
    return out


def _ordered_clique_reps(base: Graph, k: int) -> list[tuple[int, ...]]:
    """Ordered k-cliques of ``base`` up to its automorphisms."""
    autos = automorphisms(base)
    reps = set()
    for c in combinations(range(base.n), k):
        if not is_clique_tuple(base, c):
            continue
        for p in permutations(c):
            reps.add(min(tuple(a[v] for v in p) for a in autos))
    return sorted(reps)


def all_cockades(base: Graph, k: int, max_blocks: int) -> list[list[Graph]]:
    """Classes of (base, k)-cockades, indexed by block count - 1, each sorted by canonical form."""
    if max_blocks < 1:
        raise GraphError("max_blocks must be at least 1")
    if first_clique(base, k) is None:
        raise GraphError(f"base graph has no {k}-clique")
    reps = _ordered_clique_reps(base, k)
    levels = [[canonical_form(base)]]
    for _ in range(max_blocks - 1):
        found: set[bytes] = set()
        for key in levels[-1]:
            g = graph6.decode(key)
            for host in combinations(range(g.n), k):
                if not is_clique_tuple(g, host):
                    continue
                for b in reps:
                    found.add(canonical_form(glue(g, base, host, b)))
        levels.append(sorted(found))
    return [[graph6.decode(key) for key in level] for level in levels]


# ------------------------------------------------------- alpha-2 family

def is_edge_minimal_alpha2(h: Graph) -> bool:
    """alpha(h) == 2 and removing any single edge creates an independent 3-set."""
    if independence_number(h) != 2:
        return False
    for u, v in h.edges():
        common_non = ~(h.adj[u] | h.adj[v]) & h.vertex_mask & ~((1 << u) | (1 << v))
        if common_non == 0:
            return False
    return True


def derive_minimal_alpha2_family(n: int = 9) -> list[Graph]:
    """K_5-free graphs on n vertices with alpha = 2 that are edge-minimal for that.

    Computed on the complement: maximal triangle-free graphs with independence
    number at most 4 and at least one edge.
    """
    out = {}
    for f in enumerate_graphs(Filter(n, triangle_free=True, independence_at_most=4, min_edges=1)):
        full = f.vertex_mask
        maximal = all(
            f.adj[u] & f.adj[v]
            for u in range(n)
            for v in bits(full & ~f.adj[u] & ~((1 << (u + 1)) - 1))
        )
        if maximal:
            key = canonical_form(complement(f))
            out[key] = graph6.decode(key)
    return [out[k] for k in sorted(out)]


# ---------------------------------------------------- triple patterns

@dataclass(frozen=True, order=True)
class TriplePattern:
    """Intersection sizes of three distinct 5-sets, labels forgotten."""

    pairwise: tuple[int, int, int]
    triple: int

    @property
    def union_size(self) -> int:
        return 15 - sum(self.pairwise) + self.triple

    def realize(self) -> tuple[frozenset[int], frozenset[int], frozenset[int]] | None:
        """Explicit sets with |L1&L2|, |L1&L3|, |L2&L3| = pairwise, or None."""
        a, b, c = self.pairwise
        t = self.triple
        regions = {
            "123": t, "12": a - t, "13": b - t, "23": c - t,
            "1": 5 - a - b + t, "2": 5 - a - c + t, "3": 5 - b - c + t,
        }
        if any(size < 0 for size in regions.values()):
            return None
        sets: list[set[int]] = [set(), set(), set()]
        nxt = 0
        for label, size in regions.items():
            for _ in range(size):
                for ch in label:
                    sets[int(ch) - 1].add(nxt)
                nxt += 1
        l1, l2, l3 = (frozenset(s) for s in sets)
        ok = (
            len(l1) == len(l2) == len(l3) == 5
            and (len(l1 & l2), len(l1 & l3), len(l2 & l3)) == (a, b, c)
            and len(l1 & l2 & l3) == t
            and len({l1, l2, l3}) == 3
        )
        return (l1, l2, l3) if ok else None

    def to_record(self) -> dict:
        return {"pairwise": list(self.pairwise), "triple": self.triple, "union": self.union_size}


def enumerate_triple_patterns(min_union: int = 12) -> list[TriplePattern]:
    """Realizable intersection patterns of three distinct 5-sets with union >= min_union."""
    out = []
    for a in range(5):
        for b in range(a, 5):
            for c in range(b, 5):
                for t in range(min(a, b, c) + 1):
                    p = TriplePattern((a, b, c), t)
                    if p.union_size >= min_union and p.realize() is not None:
                        out.append(p)
    return out
