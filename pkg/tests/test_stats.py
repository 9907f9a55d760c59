from __future__ import annotations

import random

import pytest
from hypothesis import given

import oracles
from conftest import graphs, random_graph
from kminor.constructions import complete_minus
from kminor.graph import complement, complete_graph, cycle_graph, empty_graph, petersen_graph
from kminor.minors import SearchBudgetExceeded
from kminor.stats import (
    chromatic_at_most,
    clique_number,
    graph_stats,
    has_clique,
    independence_number,
    is_proper_coloring,
    max_vertex_disjoint_paths,
    maximum_clique,
    vertex_connectivity,
)


def test_stats_examples():
    k7 = graph_stats(complete_graph(7))
    assert (k7.min_degree, k7.max_degree, k7.edge_count) == (6, 6, 21)
    assert (k7.clique_number, k7.independence_number, k7.connectivity) == (7, 1, 6)
    c5 = graph_stats(cycle_graph(5))
    assert (c5.min_degree, c5.max_degree, c5.edge_count) == (2, 2, 5)
    assert (c5.clique_number, c5.independence_number, c5.connectivity) == (2, 2, 2)


def test_petersen_against_oracle():
    p = petersen_graph()
    s = graph_stats(p)
    assert s.clique_number == oracles.clique_number(p) == 2
    assert s.independence_number == oracles.independence_number(p) == 4
    assert s.connectivity == oracles.connectivity(p) == 3


def test_degenerate_graphs():
    s = graph_stats(empty_graph(0))
    assert (s.edge_count, s.clique_number, s.connectivity) == (0, 0, 0)
    assert graph_stats(empty_graph(4)).connectivity == 0
    assert graph_stats(empty_graph(1)).clique_number == 1


@given(graphs(max_n=7))
def test_stats_match_subset_scan(g):
    s = graph_stats(g)
    assert s.clique_number == oracles.clique_number(g)
    assert s.independence_number == oracles.independence_number(g)
    assert s.independence_number == clique_number(complement(g))
    assert 0 <= s.connectivity <= max(g.n - 1, 0)


@given(graphs(min_n=1, max_n=8))
def test_connectivity_matches_separator_scan(g):
    assert vertex_connectivity(g) == oracles.connectivity(g)


def test_connectivity_complete_graphs():
    for n in range(1, 12):
        assert vertex_connectivity(complete_graph(n)) == n - 1


def test_disjoint_paths():
    c6 = cycle_graph(6)
    assert max_vertex_disjoint_paths(c6, 0, 3) == 2
    assert max_vertex_disjoint_paths(c6, 0, 3, limit=1) == 1


def test_maximum_clique_is_clique(rng):
    for _ in range(50):
        g = random_graph(rng, rng.randint(1, 20), rng.random())
        m = maximum_clique(g)
        assert g.is_clique(m)
        assert has_clique(g, m.bit_count()) and not has_clique(g, m.bit_count() + 1)


def test_chromatic_examples():
    c5 = cycle_graph(5)
    assert chromatic_at_most(c5, 2) is None
    col = chromatic_at_most(c5, 3)
    assert col is not None and is_proper_coloring(c5, col, 3)
    k9m = complete_minus(9, "two_independent")
    col = chromatic_at_most(k9m, 7)
    assert col is not None and is_proper_coloring(k9m, col, 7)
    assert chromatic_at_most(k9m, 6) is None
    p = petersen_graph()
    col = chromatic_at_most(p, 3)
    assert col is not None and is_proper_coloring(p, col, 3)
    assert oracles.colorable(cycle_graph(5), 3) and not oracles.colorable(cycle_graph(5), 2)


@given(graphs(max_n=7))
def test_chromatic_matches_brute_force(g):
    for k in range(0, 4):
        col = chromatic_at_most(g, k)
        if col is not None:
            assert is_proper_coloring(g, col, k)
        assert (col is not None) == oracles.colorable(g, k)


def test_chromatic_below_clique_is_false(rng):
    for _ in range(30):
        g = random_graph(rng, rng.randint(2, 14), rng.uniform(0.3, 0.9))
        assert chromatic_at_most(g, clique_number(g) - 1) is None


def test_chromatic_budget():
    g = random_graph(random.Random(1), 30, 0.5)
    with pytest.raises(SearchBudgetExceeded):
        chromatic_at_most(g, clique_number(g), max_nodes=1)


def test_independence_number_duality(rng):
    for _ in range(30):
        g = random_graph(rng, rng.randint(0, 16), rng.random())
        assert independence_number(g) == clique_number(complement(g))
