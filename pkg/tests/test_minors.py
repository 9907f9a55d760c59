from __future__ import annotations

import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import graphs, random_graph
from kminor.constructions import CockadeSpec, build_cockade, complete_minus
from kminor.graph import (
    GraphError,
    add_edges,
    build_graph,
    complete_bipartite,
    complete_graph,
    contract_edge,
    cycle_graph,
    disjoint_union,
    empty_graph,
    petersen_graph,
)
from kminor.minors import (
    MinorModel,
    MinorTarget,
    SearchBudgetExceeded,
    SearchStats,
    find_family_minor,
    find_minor_of,
    greedy_contraction,
    has_family_minor,
    verify_model,
)


def singletons(n: int) -> MinorModel:
    return MinorModel(tuple(1 << v for v in range(n)), ())


def two_block_cockade():
    return build_cockade(CockadeSpec.chain(complete_minus(8, "two_independent"), 4, 2))


def test_family_examples():
    m = find_family_minor(complete_graph(9), 9, 6)
    assert m is not None and m.branch_sets == tuple(1 << v for v in range(9)) and m.missing_pairs == ()
    assert find_family_minor(petersen_graph(), 9, 6) is None
    g = two_block_cockade()
    assert (g.n, g.edge_count) == (12, 46)
    assert find_family_minor(g, 9, 5) is None
    m = find_family_minor(g, 9, 6)
    assert m is not None and verify_model(g, m, MinorTarget.family(9, 6)) == (True, "ok")


def test_explicit_examples():
    for g in (petersen_graph(), cycle_graph(4)):
        m = find_minor_of(g, complete_graph(1))
        assert m is not None and len(m.branch_sets) == 1
        assert verify_model(g, m, MinorTarget.explicit(complete_graph(1)))[0]
    m = find_minor_of(cycle_graph(5), complete_graph(3))
    assert m is not None and verify_model(cycle_graph(5), m, MinorTarget.explicit(complete_graph(3)))[0]
    k33 = complete_bipartite(3, 3)
    m = find_minor_of(k33, complete_graph(4))
    assert m is not None and verify_model(k33, m, MinorTarget.explicit(complete_graph(4)))[0]
    assert find_minor_of(k33, complete_graph(5)) is None
    assert find_minor_of(empty_graph(0), complete_graph(1)) is None


def test_explicit_model_keeps_target_order():
    h = build_graph(4, [(0, 1), (1, 2), (2, 3)])  # P4
    g = cycle_graph(7)
    m = find_minor_of(g, h)
    assert m is not None
    ok, diag = verify_model(g, m, MinorTarget.explicit(h))
    assert ok, diag


def test_disconnected_targets():
    two_triangles = disjoint_union(complete_graph(3), complete_graph(3))
    assert find_minor_of(two_triangles, two_triangles) is not None
    assert find_minor_of(complete_graph(6), two_triangles) is not None
    assert find_minor_of(cycle_graph(6), two_triangles) is None
    # family mode with s >= t - 1 permits a disconnected member
    g = disjoint_union(complete_graph(4), complete_graph(1))
    m = find_family_minor(g, 5, 4)
    assert m is not None and verify_model(g, m, MinorTarget.family(5, 4))[0]
    assert find_family_minor(g, 5, 3) is None


def test_verify_model_diagnostics():
    k9 = complete_graph(9)
    assert verify_model(k9, singletons(9), MinorTarget.family(9, 6)) == (True, "ok")
    overlap = MinorModel((0b11, 0b110) + tuple(1 << v for v in range(3, 10)), ())
    g = complete_graph(10)
    assert verify_model(g, overlap, MinorTarget.family(9, 6)) == (False, "disjointness")
    p = build_graph(10, [(i, j) for i in range(10) for j in range(i + 1, 10) if (i, j) != (0, 2)])
    p = build_graph(10, [e for e in p.edges() if e not in ((0, 1), (1, 2))])
    discon = MinorModel((0b101,) + tuple(1 << v for v in range(3, 10)) + (0b10,), ())
    assert verify_model(p, discon, MinorTarget.family(9, 6)) == (False, "connectivity")
    assert verify_model(k9, singletons(8), MinorTarget.family(9, 6))[0] is False
    lying = MinorModel(tuple(1 << v for v in range(9)), ((0, 1),))
    assert verify_model(k9, lying, MinorTarget.family(9, 6)) == (False, "missing_pairs")
    sparse = complete_minus(9, [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7)])
    model = MinorModel(tuple(1 << v for v in range(9)), tuple((0, j) for j in range(1, 8)))
    assert verify_model(sparse, model, MinorTarget.family(9, 6)) == (False, "missing_budget")


def test_model_records_roundtrip():
    g = two_block_cockade()
    m = find_family_minor(g, 9, 6)
    rec = m.to_record()
    assert rec["branch_sets"] == sorted(rec["branch_sets"])
    back = MinorModel.from_record(rec)
    assert verify_model(g, back, MinorTarget.family(9, 6))[0]


def test_target_validation():
    with pytest.raises(GraphError):
        MinorTarget.family(0, 0)
    with pytest.raises(GraphError):
        MinorTarget(t=3, s=1, graph=complete_graph(3))
    with pytest.raises(GraphError):
        find_family_minor(complete_graph(3), 3, -1)


def test_budget_exceeded():
    g = build_cockade(CockadeSpec.chain(complete_minus(8, "two_independent"), 4, 3))
    with pytest.raises(SearchBudgetExceeded):
        find_family_minor(g, 9, 5, max_nodes=3)


def test_greedy_contraction():
    parts = greedy_contraction(cycle_graph(6), 3)
    assert parts is not None and len(parts) == 3
    assert greedy_contraction(empty_graph(5), 2) == [1 << 3, 1 << 4]  # isolated vertices are dropped
    assert greedy_contraction(empty_graph(1), 2) is None


@given(graphs(max_n=9), st.integers(1, 6), st.integers(0, 6))
def test_soundness(g, t, s):
    m = find_family_minor(g, t, s)
    if m is not None:
        assert verify_model(g, m, MinorTarget.family(t, s)) == (True, "ok")


@given(graphs(min_n=1, max_n=7), st.integers(1, 5), st.integers(0, 4))
def test_family_matches_partition_oracle(g, t, s):
    assert (find_family_minor(g, t, s) is not None) == oracles.has_family_minor(g, t, s)


@given(graphs(min_n=1, max_n=7), graphs(min_n=1, max_n=5))
def test_explicit_matches_partition_oracle(g, h):
    m = find_minor_of(g, h)
    assert (m is not None) == oracles.has_minor(g, h)
    if m is not None:
        assert verify_model(g, m, MinorTarget.explicit(h))[0]


def test_monotone_under_edges_and_budget():
    rng = random.Random(23)
    for _ in range(40):
        g = random_graph(rng, rng.randint(6, 10), rng.uniform(0.4, 0.9))
        t, s = rng.randint(4, 7), rng.randint(0, 4)
        if has_family_minor(g, t, s):
            assert has_family_minor(g, t, s + 1)
            missing = [(i, j) for i in range(g.n) for j in range(i + 1, g.n) if not g.has_edge(i, j)]
            if missing:
                assert has_family_minor(add_edges(g, [rng.choice(missing)]), t, s)


def test_contracting_inside_a_branch_set_keeps_the_minor():
    rng = random.Random(29)
    done = 0
    while done < 20:
        g = random_graph(rng, rng.randint(8, 11), rng.uniform(0.4, 0.8))
        m = find_family_minor(g, 6, 2)
        if m is None:
            continue
        big = next((b for b in m.branch_sets if b.bit_count() > 1), None)
        if big is None:
            continue
        edge = next((i, j) for i, j in g.edges() if big >> i & 1 and big >> j & 1)
        assert find_family_minor(contract_edge(g, *edge), 6, 2) is not None
        done += 1


def test_fast_path_agrees_with_unpruned_search():
    rng = random.Random(31)
    agreed = 0
    for _ in range(150):
        n = rng.randint(1, 9)
        t = rng.randint(2, 7)
        s = rng.randint(0, comb(t, 2) // 2)
        g = random_graph(rng, n, rng.uniform(0.1, 0.6))
        fast = find_family_minor(g, t, s)
        full = find_family_minor(g, t, s, heuristic=False, prune=False)
        assert (fast is None) == (full is None)
        agreed += 1
    assert agreed == 150


def test_stats_are_filled():
    stats = SearchStats()
    find_family_minor(two_block_cockade(), 9, 5, stats=stats)
    assert stats.nodes > 0 and stats.to_record()["nodes"] == stats.nodes
