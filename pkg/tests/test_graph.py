import pytest
from hypothesis import given

from conftest import complete, graphs, path
from parfpt.graph import Graph, GraphError, Instance, ParseError, delete_vertices, parse_dimacs, to_dimacs


def test_parse_triangle():
    g = parse_dimacs("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n")
    assert (g.n, g.m) == (3, 3)
    assert g == complete(3)


def test_parse_isolated_vertices():
    g = parse_dimacs("c two lonely vertices\np edge 2 0\n")
    assert (g.n, g.m) == (2, 0)


@pytest.mark.parametrize(
    "text, kind, line",
    [
        ("p edge 2 1\ne 1 1\n", "self-loop", 2),
        ("p edge 3 2\ne 1 2\ne 2 1\n", "duplicate", 3),
        ("p edge 2 1\ne 1 3\n", "range", 2),
        ("p edge x 1\n", "header", 1),
        ("e 1 2\n", "header", 1),
        ("p edge 3 2\ne 1 2\n", "header", 2),
        ("p edge 3 1\ne 1 two\n", "syntax", 2),
    ],
)
def test_parse_errors_name_kind_and_line(text, kind, line):
    with pytest.raises(ParseError) as info:
        parse_dimacs(text)
    assert info.value.kind == kind
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_bare_edge_list_is_zero_based():
    g = parse_dimacs("0 1\n1 2\n\n")
    assert (g.n, g.m) == (3, 2)
    assert list(g.edges()) == [(0, 1), (1, 2)]


def test_dimacs_round_trip():
    g = complete(5)
    assert parse_dimacs(to_dimacs(g)) == g


def test_graph_rejects_non_simple_input():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph([[1], []])


def test_delete_from_triangle():
    g = delete_vertices(complete(3), [1])
    assert (g.n, g.m) == (2, 1)
    assert g.labels == (0, 2)


def test_delete_nothing_is_identity():
    g = complete(4)
    assert delete_vertices(g, []) == g


def test_delete_middle_of_path():
    g = delete_vertices(path(2), [1])
    assert (g.n, g.m) == (2, 0)
    assert [g.degree(v) for v in range(g.n)] == [0, 0]


def test_delete_rejects_bad_id():
    with pytest.raises(GraphError):
        delete_vertices(complete(3), [3])


def test_instance_rejects_negative_budget():
    with pytest.raises(GraphError):
        Instance(complete(2), -1)


@given(graphs())
def test_adjacency_is_symmetric_and_degrees_count_neighbors(g):
    for v in range(g.n):
        assert g.degree(v) == len(set(g.adj[v]))
        for u in g.adj[v]:
            assert v in g.adj[u]
    assert sum(g.degree(v) for v in range(g.n)) == 2 * g.m


@given(graphs())
def test_deletion_preserves_restricted_adjacency(g):
    drop = set(range(0, g.n, 3))
    h = g.delete_vertices(drop)
    kept = [v for v in range(g.n) if v not in drop]
    assert list(h.labels) == kept
    for i in range(h.n):
        for j in range(h.n):
            assert h.has_edge(i, j) == g.has_edge(h.labels[i], h.labels[j])


def test_labels_compose_through_repeated_deletion():
    g = path(5).delete_vertices([0]).delete_vertices([0])
    assert g.labels == (2, 3, 4, 5)
    assert g.original([0, 3]) == (2, 5)
