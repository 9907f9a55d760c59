"""Isomorph-free generation of small graphs by canonical augmentation.

Graphs grow one vertex at a time. A child is kept only when its canonical
deletion parent (the child minus its canonically last vertex) is the parent
it was grown from, so every class is reached from exactly one parent; the
few children a parent reaches twice are removed by a per-parent set.
Hereditary filter parts prune each level; the rest apply at the last one.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from itertools import combinations
from math import comb
from typing import Iterator

from . import graph6
from ._kernels import canonical_graph6, canonical_labeling, max_clique
from .graph import Graph, GraphError, complement
from .stats import clique_number, independence_number

MAX_ENUMERATION_ORDER = 12


@dataclass(frozen=True)
class Filter:
    n: int
    min_degree: int | None = None
    max_degree: int | None = None
    min_edges: int | None = None
    max_edges: int | None = None
    clique_at_most: int | None = None
    independence_at_most: int | None = None
    triangle_free: bool = False

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_ENUMERATION_ORDER:
            raise GraphError(f"enumeration supports 0 <= n <= {MAX_ENUMERATION_ORDER}, got {self.n}")
        for lo, hi, name in (
            (self.min_degree, self.max_degree, "degree"),
            (self.min_edges, self.max_edges, "edge"),
        ):
            if lo is not None and hi is not None and lo > hi:
                raise GraphError(f"inconsistent {name} bounds: {lo} > {hi}")
        for name in ("min_degree", "max_degree", "min_edges", "max_edges",
                     "clique_at_most", "independence_at_most"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise GraphError(f"{name} must be non-negative")

    @property
    def omega_bound(self) -> int | None:
        if self.triangle_free:
            return 2 if self.clique_at_most is None else min(2, self.clique_at_most)
        return self.clique_at_most

    def complemented(self) -> "Filter":
        """The filter met by the complement of every graph this filter accepts."""
        n, top = self.n, comb(self.n, 2)

        def flip(x: int | None, total: int) -> int | None:
            return None if x is None else max(total - x, 0)

        return Filter(
            n=n,
            min_degree=flip(self.max_degree, n - 1) if self.max_degree is not None else None,
            max_degree=flip(self.min_degree, n - 1) if self.min_degree is not None else None,
            min_edges=flip(self.max_edges, top) if self.max_edges is not None else None,
            max_edges=flip(self.min_edges, top) if self.min_edges is not None else None,
            clique_at_most=self.independence_at_most,
            independence_at_most=self.omega_bound,
        )

    def accepts(self, g: Graph) -> bool:
        if g.n != self.n:
            return False
        degs = g.degrees()
        e = g.edge_count
        if self.min_degree is not None and degs and min(degs) < self.min_degree:
            return False
        if self.max_degree is not None and degs and max(degs) > self.max_degree:
            return False
        if self.min_edges is not None and e < self.min_edges:
            return False
        if self.max_edges is not None and e > self.max_edges:
            return False
        omega = self.omega_bound
        if omega is not None and clique_number(g) > omega:
            return False
        if self.independence_at_most is not None and independence_number(g) > self.independence_at_most:
            return False
        return True

    def to_record(self) -> dict:
        return asdict(self)


def _has_clique_in(adj: tuple[int, ...], mask: int, size: int) -> bool:
    """Whether the vertices of ``mask`` contain a clique of ``size`` vertices."""
    if size <= 0:
        return True
    if mask.bit_count() < size:
        return False
    rows = [r & mask if mask >> v & 1 else 0 for v, r in enumerate(adj)]
    if size == 1:
        return True
    return max_clique(rows, size - 1) != 0


class _Expander:
    """Children of one parent at a given level, as sorted canonical graph6 keys."""

    def __init__(self, flt: Filter) -> None:
        self.flt = flt
        self.omega = flt.omega_bound

    def level_min_degree(self, m: int) -> int:
        if self.flt.min_degree is None:
            return 0
        return max(self.flt.min_degree - (self.flt.n - m), 0)

    def children(self, parent_key: bytes) -> list[bytes]:
        flt = self.flt
        parent = graph6.decode(parent_key)
        p = parent.n
        m = p + 1
        new = p
        degs = parent.degrees()
        e = parent.edge_count
        lo_deg = self.level_min_degree(m)
        forced = 0
        free: list[int] = []
        for v in range(p):
            if degs[v] < lo_deg - 1:
                return []
            cap_ok = flt.max_degree is None or degs[v] < flt.max_degree
            if degs[v] == lo_deg - 1 and lo_deg > 0:
                if not cap_ok:
                    return []
                forced |= 1 << v
            elif cap_ok:
                free.append(v)
        nforced = forced.bit_count()
        hi = p
        if flt.max_degree is not None:
            hi = min(hi, flt.max_degree)
        if flt.max_edges is not None:
            hi = min(hi, flt.max_edges - e)
        lo = max(lo_deg, nforced)
        full = (1 << p) - 1
        comp_adj = None
        if flt.independence_at_most is not None:
            comp_adj = tuple((full ^ r) & ~(1 << v) for v, r in enumerate(parent.adj))
        seen: set[bytes] = set()
        out: list[bytes] = []
        for k in range(lo, hi + 1):
            extra = k - nforced
            if extra < 0 or extra > len(free):
                continue
            for pick in combinations(free, extra):
                s = forced
                for v in pick:
                    s |= 1 << v
                if self.omega is not None and _has_clique_in(parent.adj, s, self.omega):
                    continue
                if comp_adj is not None and _has_clique_in(comp_adj, full & ~s, flt.independence_at_most):
                    continue
                rows = tuple(r | (1 << new) if s >> v & 1 else r for v, r in enumerate(parent.adj)) + (s,)
                order = canonical_labeling(rows)[0]
                w = order[-1]
                if w != new:
                    rest = _delete(rows, w)
                    if canonical_graph6(rest) != parent_key:
                        continue
                key = canonical_graph6(rows)
                if key not in seen:
                    seen.add(key)
                    out.append(key)
        return out


def _delete(rows: tuple[int, ...], w: int) -> tuple[int, ...]:
    low = (1 << w) - 1
    out = []
    for v, r in enumerate(rows):
        if v != w:
            out.append((r & low) | ((r >> (w + 1)) << w))
    return tuple(out)


_worker_expander: _Expander | None = None


def _init_worker(flt: Filter) -> None:
    global _worker_expander
    _worker_expander = _Expander(flt)


def _expand_in_worker(parent_key: bytes) -> list[bytes]:
    assert _worker_expander is not None
    return _worker_expander.children(parent_key)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("KMINOR_WORKERS", "1")))
    except ValueError:
        return 1


def _generate(flt: Filter, workers: int) -> list[bytes]:
    """Sorted canonical keys of all classes passing ``flt``."""
    expander = _Expander(flt)
    level = [graph6.encode(Graph(0, ()))]
    pool = None
    try:
        if workers > 1 and flt.n >= 7:
            pool = ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(flt,))
        for _ in range(flt.n):
            nxt: list[bytes] = []
            if pool is not None and len(level) >= 4 * workers:
                for kids in pool.map(_expand_in_worker, level, chunksize=16):
                    nxt.extend(kids)
            else:
                for key in level:
                    nxt.extend(expander.children(key))
            nxt.sort()
            level = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    return [key for key in level if flt.accepts(graph6.decode(key))]


def enumerate_forms(
    flt: Filter,
    *,
    complement_side: bool = False,
    workers: int | None = None,
    after: bytes | None = None,
) -> list[bytes]:
    """Canonical graph6 forms of every class passing ``flt``, ascending.

    With ``complement_side`` the generator runs over complements (which is far
    cheaper for dense filters) and the results are mapped back.
    """
    workers = default_workers() if workers is None else workers
    if complement_side:
        keys = _generate(flt.complemented(), workers)
        forms = sorted(canonical_graph6(complement(graph6.decode(k)).adj) for k in keys)
    else:
        forms = _generate(flt, workers)
    if after is not None:
        forms = [f for f in forms if f > after]
    return forms


def enumerate_graphs(
    flt: Filter,
    *,
    complement_side: bool = False,
    workers: int | None = None,
    after: bytes | None = None,
) -> Iterator[Graph]:
    """One canonical representative per isomorphism class passing ``flt``."""
    for form in enumerate_forms(flt, complement_side=complement_side, workers=workers, after=after):
        yield graph6.decode(form)


def count_graphs(flt: Filter, *, complement_side: bool = False, workers: int | None = None) -> int:
    return len(enumerate_forms(flt, complement_side=complement_side, workers=workers))
