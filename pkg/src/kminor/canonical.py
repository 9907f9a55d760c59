"""Canonical labelling and isomorphism testing."""
from __future__ import annotations

from . import graph6
from ._kernels import canonical_graph6 as _canonical_graph6
from ._kernels import canonical_labeling as _labeling
from .graph import Graph, permute


def canonical_order(g: Graph) -> list[int]:
    """Vertices in canonical position order (``order[p]`` sits at position ``p``)."""
    return _labeling(g.adj)[0]


def canonical_graph(g: Graph) -> Graph:
    order = canonical_order(g)
    perm = [0] * g.n
    for p, v in enumerate(order):
        perm[v] = p
    return permute(g, perm)


def canonical_form(g: Graph) -> bytes:
    """graph6 bytes of the canonically relabelled graph; equal iff isomorphic."""
    if g.n <= 62:
        return _canonical_graph6(g.adj)
    return graph6.encode(canonical_graph(g))


def canonical_key(adj: tuple[int, ...]) -> bytes:
    """canonical_form for raw adjacency rows (hot path of the minor search)."""
    return _canonical_graph6(adj)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.edge_count != h.edge_count:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    return canonical_form(g) == canonical_form(h)


def automorphism_generators(g: Graph) -> list[list[int]]:
    """Automorphisms met by the canonical search (not necessarily a full generating set)."""
    return _labeling(g.adj)[1]
