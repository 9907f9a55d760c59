from __future__ import annotations

from itertools import combinations, permutations

import pytest

from kminor import graph6
from kminor.canonical import canonical_form, is_isomorphic
from kminor.constructions import (
    CockadeSpec,
    GluingStep,
    TriplePattern,
    all_cockades,
    automorphisms,
    build_cockade,
    complete_minus,
    derive_minimal_alpha2_family,
    enumerate_triple_patterns,
    family_members,
    glue,
    is_clique_tuple,
    is_edge_minimal_alpha2,
)
from kminor.enumeration import Filter, enumerate_graphs
from kminor.graph import GraphError, build_graph, complement, cycle_graph, remove_edges
from kminor.stats import clique_number, independence_number
from kminor.subgraph import contains_spanning, find_embedding

K8_2 = complete_minus(8, "two_independent")


def test_complete_minus_examples():
    assert complete_minus(9, "minus1").edge_count == 35
    assert complete_minus(8, "two_independent").edge_count == 26
    adj = complete_minus(9, "two_adjacent")
    assert adj.edge_count == 34
    assert not is_isomorphic(adj, complete_minus(9, "two_independent"))
    assert complete_minus(6, "three_independent").edge_count == 12
    assert complete_minus(4, [(0, 3)]).edge_count == 5


@pytest.mark.parametrize(
    "t, pattern",
    [(5, "three_independent"), (3, "two_independent"), (2, "two_adjacent"), (4, "bogus"),
     (4, [(0, 4)]), (4, [(1, 1)]), (4, [(0, 1), (1, 0)])],
)
def test_complete_minus_rejects(t, pattern):
    with pytest.raises(GraphError):
        complete_minus(t, pattern)


def _edge_augmentation_classes(t: int, s: int) -> int:
    """Graphs with s edges on t vertices, grown one edge at a time (independent route)."""
    level = {canonical_form(build_graph(t, []))}
    for _ in range(s):
        nxt = set()
        for key in level:
            g = graph6.decode(key)
            for i, j in combinations(range(t), 2):
                if not g.has_edge(i, j):
                    nxt.add(canonical_form(build_graph(t, list(g.edges()) + [(i, j)])))
        level = nxt
    return len(level)


def test_family_members_examples():
    assert len(family_members(9, 1)) == 1
    two = family_members(9, 2)
    assert len(two) == 2
    assert {canonical_form(g) for g in two} == {
        canonical_form(complete_minus(9, "two_independent")),
        canonical_form(complete_minus(9, "two_adjacent")),
    }
    six = family_members(9, 6)
    assert len(six) == _edge_augmentation_classes(9, 6)


def test_family_members_properties():
    for t, s in ((6, 3), (7, 4), (5, 10)):
        members = family_members(t, s)
        forms = [canonical_form(g) for g in members]
        assert len(set(forms)) == len(forms)
        for g in members:
            assert g.n == t and g.edge_count == t * (t - 1) // 2 - s
            assert complement(g).edge_count == s
    with pytest.raises(GraphError):
        family_members(4, 7)


def test_build_cockade_examples():
    one = build_cockade(CockadeSpec(K8_2, 4))
    assert one == K8_2 and (one.n, one.edge_count) == (8, 26)
    for m in (2, 3, 4):
        g = build_cockade(CockadeSpec.chain(K8_2, 4, m))
        assert (g.n, g.edge_count) == (4 * m + 4, 20 * m + 6)
        assert g.edge_count == 5 * g.n - 14


def test_build_cockade_rejects_non_clique():
    bad = CockadeSpec(K8_2, 4, (GluingStep((0, 1, 4, 5), (4, 5, 6, 7)),))
    with pytest.raises(GraphError):
        build_cockade(bad)
    bad_base_side = CockadeSpec(K8_2, 4, (GluingStep((4, 5, 6, 7), (0, 1, 4, 5)),))
    with pytest.raises(GraphError):
        build_cockade(bad_base_side)
    with pytest.raises(GraphError):
        build_cockade(CockadeSpec(cycle_graph(5), 3))
    with pytest.raises(GraphError):
        CockadeSpec.chain(K8_2, 4, 0)


def test_automorphisms_of_base():
    autos = automorphisms(K8_2)
    # complement is 2K2 + 4K1: (2*2*2) * 4! automorphisms
    assert len(autos) == 8 * 24
    for a in autos:
        assert all(K8_2.has_edge(a[u], a[v]) for u, v in K8_2.edges())


def _brute_two_block_classes() -> set[bytes]:
    """Every host clique, every base clique, every bijection; no symmetry reduction."""
    cliques = [c for c in combinations(range(8), 4) if is_clique_tuple(K8_2, c)]
    out = set()
    for host in cliques:
        for base in cliques:
            for perm in permutations(base):
                out.add(canonical_form(glue(K8_2, K8_2, host, perm)))
    return out


def test_all_cockades_two_blocks_against_brute_force():
    levels = all_cockades(K8_2, 4, 2)
    assert len(levels[0]) == 1
    assert {canonical_form(g) for g in levels[1]} == _brute_two_block_classes()
    for g in levels[1]:
        assert (g.n, g.edge_count) == (12, 46)


def test_all_cockades_properties():
    levels = all_cockades(K8_2, 4, 3)
    for level in levels:
        forms = [canonical_form(g) for g in level]
        assert forms == sorted(set(forms))
        for g in level[::25]:
            assert g.edge_count == 5 * g.n - 14
            assert find_embedding(K8_2, g) is not None


# -- alpha-2 family -------------------------------------------------------


def _graph_side_minimal_family() -> set[bytes]:
    out = set()
    for h in enumerate_graphs(Filter(9, independence_at_most=2, clique_at_most=4)):
        if independence_number(h) != 2:
            continue
        if all(independence_number(remove_edges(h, [e])) >= 3 for e in h.edges()):
            out.add(canonical_form(h))
    return out


def test_minimal_alpha2_family_two_routes():
    fam = derive_minimal_alpha2_family()
    assert {canonical_form(h) for h in fam} == _graph_side_minimal_family()
    # three independent routes agree on this count
    assert len(fam) == 5


def test_minimal_alpha2_family_properties():
    for h in derive_minimal_alpha2_family():
        assert h.n == 9
        assert independence_number(h) == 2 and clique_number(h) <= 4
        assert min(h.degrees()) >= 4 and max(h.degrees()) <= 6
        assert is_edge_minimal_alpha2(h)
        for e in h.edges():
            assert independence_number(remove_edges(h, [e])) >= 3


def test_family_members_are_mutually_non_containing():
    fam = derive_minimal_alpha2_family()
    for a in fam:
        for b in fam:
            if a is not b:
                assert not contains_spanning(a, b)


# -- triple patterns ------------------------------------------------------


def _oracle_patterns() -> set[TriplePattern]:
    l1 = frozenset(range(5))
    out = set()
    for a in range(5):
        l2 = frozenset(range(a)) | frozenset(range(5, 10 - a))
        for c in combinations(range(15), 5):
            l3 = frozenset(c)
            if len({l1, l2, l3}) < 3 or len(l1 | l2 | l3) < 12:
                continue
            pair = tuple(sorted((len(l1 & l2), len(l1 & l3), len(l2 & l3))))
            out.add(TriplePattern(pair, len(l1 & l2 & l3)))
    return out


def test_triple_patterns():
    pats = enumerate_triple_patterns()
    assert len(pats) == 9
    assert set(pats) == _oracle_patterns()
    assert TriplePattern((0, 0, 0), 0) in pats
    assert all(not (max(p.pairwise) == 4 and sorted(p.pairwise)[:2] == [0, 0]) for p in pats)
    for p in pats:
        l1, l2, l3 = p.realize()
        assert len(l1 | l2 | l3) == p.union_size == 15 - sum(p.pairwise) + p.triple >= 12
        assert p.triple <= min(p.pairwise) and max(p.pairwise) <= 4


def test_triple_pattern_realize_rejects_impossible():
    assert TriplePattern((1, 1, 1), 2).realize() is None
    assert TriplePattern((3, 3, 3), 0).realize() is None
