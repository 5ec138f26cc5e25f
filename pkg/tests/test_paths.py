from hypothesis import given, settings

from earparity.graph import Graph, check_path, complete_graph, cycle_graph, path_graph
from earparity.oracles import enum_paths
from earparity.paths import even_path_ge4, parity_path, two_disjoint_paths
from strategies import connected_multigraphs


def test_parity_path_c5():
    g = cycle_graph(5)
    assert parity_path(g, 1, 2, 1).length == 1
    assert parity_path(g, 1, 2, 0).length == 4


def test_parity_path_bipartite_absent():
    assert parity_path(cycle_graph(4), 1, 3, 1) is None
    assert parity_path(cycle_graph(4), 1, 3, 0).length == 2


def test_two_disjoint_paths_k4():
    p, q = two_disjoint_paths(complete_graph(4), {1, 2}, {3, 4})
    assert {p.start, q.start} == {1, 2} and {p.end, q.end} == {3, 4}
    assert not set(p.vertices) & set(q.vertices)


def test_two_disjoint_paths_absent_on_path():
    assert two_disjoint_paths(path_graph(3), {1}, {3}) is None


def test_two_disjoint_paths_c5_arcs():
    p, q = two_disjoint_paths(cycle_graph(5), {1, 2}, {3, 5})
    got = {(x.start, x.end) for x in (p, q)}
    assert got == {(1, 5), (2, 3)}


def test_two_disjoint_paths_uses_distinct_parallel_edges():
    g = Graph((), {0: (1, 2), 1: (1, 2), 2: (1, 2)})
    p, q = two_disjoint_paths(g, {1}, {2})
    assert p.edges != q.edges


def test_even_path_ge4_examples():
    assert even_path_ge4(cycle_graph(5), 1, 2).length == 4
    assert even_path_ge4(cycle_graph(4), 1, 2) is None
    assert even_path_ge4(complete_graph(4), 1, 2) is None


@given(connected_multigraphs(max_vertices=6, max_edges=10))
@settings(max_examples=150, deadline=None)
def test_parity_path_matches_enumeration(g):
    u, v = g.vertices[0], g.vertices[-1]
    lengths = {p.length % 2 for p in enum_paths(g, u, v)}
    for parity in (0, 1):
        p = parity_path(g, u, v, parity)
        assert (p is not None) == (parity in lengths)
        if p is not None:
            assert check_path(g, p) is None and p.length % 2 == parity
            assert (p.start, p.end) == (u, v)


@given(connected_multigraphs(max_vertices=7, max_edges=10))
@settings(max_examples=150, deadline=None)
def test_even_path_ge4_matches_enumeration(g):
    u, v = g.vertices[0], g.vertices[1]
    expect = any(p.length % 2 == 0 and p.length >= 4 for p in enum_paths(g, u, v))
    p = even_path_ge4(g, u, v)
    assert (p is not None) == expect
    if p is not None:
        assert check_path(g, p) is None and p.length % 2 == 0 and p.length >= 4
