import itertools

import pytest
from hypothesis import given, settings

from conftest import complete, disjoint_edges, graphs
from parfpt.engine import verify_witness
from parfpt.graph import Graph
from parfpt.oracle import MAX_ORACLE_N, brute_force_vc, is_cover


def test_triangle():
    res = brute_force_vc(complete(3), 2)
    assert res.optimum == 2 and res.member
    assert verify_witness(complete(3), res.witness)


def test_empty_graph():
    res = brute_force_vc(Graph.empty(5), 0)
    assert res.optimum == 0 and res.witness == ()


@pytest.mark.parametrize("t", [1, 3, 6])
def test_disjoint_edges(t):
    assert brute_force_vc(disjoint_edges(t), t).optimum == t
    assert not brute_force_vc(disjoint_edges(t), t - 1).member


def test_guard():
    with pytest.raises(ValueError):
        brute_force_vc(Graph.empty(MAX_ORACLE_N + 1), 0)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9))
def test_witness_is_minimal(g):
    res = brute_force_vc(g, 0)
    assert verify_witness(g, res.witness) and is_cover(g, res.witness)
    assert len(res.witness) == res.optimum
    for c in itertools.combinations(range(g.n), max(res.optimum - 1, 0)):
        if res.optimum > 0:
            assert not is_cover(g, c)
