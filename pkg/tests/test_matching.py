import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complete, cycle, disjoint_edges, graphs
from parfpt.graph import Graph
from parfpt.matching import maximal_matching, maximal_set_packing, maximum_bipartite_matching


def assert_maximal_matching(g, m):
    ends = [v for e in m for v in e]
    assert len(ends) == len(set(ends))
    assert all(g.has_edge(u, v) for u, v in m)
    matched = set(ends)
    for u, v in g.edges():
        assert u in matched or v in matched


def test_empty_graph_matching():
    assert maximal_matching(Graph.empty(4)) == []


def test_triangle_takes_first_edge():
    assert maximal_matching(complete(3)) == [(0, 1)]


def test_perfect_matching_is_its_own_maximal_matching():
    assert maximal_matching(disjoint_edges(5)) == [(2 * i, 2 * i + 1) for i in range(5)]


@given(graphs())
def test_maximal_matching_properties(g):
    m = maximal_matching(g)
    assert_maximal_matching(g, m)
    assert maximal_matching(g) == m


def test_packing_skips_conflicts():
    assert maximal_set_packing([(0, 1), (1, 2), (3, 4)], 10) == [(0, 1), (3, 4)]


def test_packing_respects_cap():
    assert maximal_set_packing([(0,), (1,), (2,)], 2) == [(0,), (1,)]


def test_packing_single():
    assert maximal_set_packing([(5, 7)], 1) == [(5, 7)]


def test_packing_cap_must_be_positive():
    with pytest.raises(ValueError):
        maximal_set_packing([(0,)], 0)


def _brute_max_disjoint_containing_first(structures):
    best = 0
    for r in range(len(structures) + 1):
        for combo in itertools.combinations(structures, r):
            if structures[0] not in combo:
                continue
            flat = [v for s in combo for v in s]
            if len(flat) == len(set(flat)):
                best = max(best, r)
    return best


def test_packing_example_matches_brute_force():
    structures = [(0, 1), (1, 2), (3, 4)]
    assert len(maximal_set_packing(structures, 10)) == _brute_max_disjoint_containing_first(structures) == 2


@given(
    st.lists(st.sets(st.integers(0, 9), min_size=1, max_size=3).map(lambda s: tuple(sorted(s))), min_size=1, max_size=12),
    st.integers(1, 6),
)
def test_packing_properties(structures, cap):
    out = maximal_set_packing(structures, cap)
    flat = [v for s in out for v in s]
    assert len(flat) == len(set(flat))
    assert 1 <= len(out) <= cap
    if len(out) < cap:
        used = set(flat)
        for s in structures:
            assert s in out or used & set(s)
    assert maximal_set_packing(structures, cap) == out


def test_bipartite_complete_2_2():
    bm = maximum_bipartite_matching(["a", "b"], ["x", "y"], [(u, v) for u in "ab" for v in "xy"])
    assert bm.size == 2


def test_bipartite_star():
    bm = maximum_bipartite_matching([0], [1, 2, 3], [(0, 1), (0, 2), (0, 3)])
    assert bm.size == 1
    assert bm.cover_left == {0} and not bm.cover_right


def _brute_max_matching(edges):
    for r in range(len(edges), -1, -1):
        for combo in itertools.combinations(edges, r):
            ls = [u for u, _ in combo]
            rs = [v for _, v in combo]
            if len(set(ls)) == r and len(set(rs)) == r:
                return r
    return 0


def test_bipartite_six_cycle():
    # 6-cycle l0-r0-l1-r1-l2-r2-l0
    edges = [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)]
    bm = maximum_bipartite_matching([0, 1, 2], [0, 1, 2], edges)
    assert bm.size == _brute_max_matching(edges) == 3


def test_rejects_edges_outside_bipartition():
    with pytest.raises(ValueError):
        maximum_bipartite_matching([0], [1], [(1, 0)])


@given(graphs(max_n=9), st.integers(0, 9))
def test_konig_duality_and_optimality(g, split):
    left = [v for v in range(g.n) if v < split]
    right = [v for v in range(g.n) if v >= split]
    edges = [(u, v) for u, v in g.edges() if u < split <= v]
    bm = maximum_bipartite_matching(left, right, edges)
    ls = [u for u, _ in bm.pairs]
    rs = [v for _, v in bm.pairs]
    assert len(set(ls)) == len(ls) and len(set(rs)) == len(rs)
    assert all((u, v) in edges for u, v in bm.pairs)
    assert len(bm.cover_left) + len(bm.cover_right) == bm.size
    for u, v in edges:
        assert u in bm.cover_left or v in bm.cover_right
    ref = nx.Graph()
    ref.add_nodes_from(("L", u) for u in left)
    ref.add_nodes_from(("R", v) for v in right)
    ref.add_edges_from((("L", u), ("R", v)) for u, v in edges)
    expected = len(nx.bipartite.hopcroft_karp_matching(ref, top_nodes=[("L", u) for u in left])) // 2
    assert bm.size == expected


def test_double_cover_of_odd_cycle_is_perfect():
    g = cycle(5)
    edges = [(u, v) for u in range(5) for v in sorted(g.adj[u])]
    bm = maximum_bipartite_matching(list(range(5)), list(range(5)), edges)
    assert bm.size == 5
