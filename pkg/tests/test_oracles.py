import pytest
from hypothesis import given, settings

from earparity.errors import ScaleBoundExceeded
from earparity.graph import (c3plus, c5plus, check_circuit, complete_graph, cycle_graph, gen_hk,
                             is_bipartite)
from earparity.matroid import fano, from_graph
from earparity.oracles import (brute_oddc3_free, brute_tok4, enum_circuits,
                               enum_matroid_circuits, enum_paths, nullspace_gf2)
from strategies import connected_multigraphs, multigraphs


@pytest.mark.parametrize("g,count", [(complete_graph(4), 7), (cycle_graph(5), 1), (c3plus(), 3)])
def test_enum_circuits_counts(g, count):
    cs = enum_circuits(g)
    assert len(cs) == count and all(check_circuit(g, c) is None for c in cs)


def test_brute_oddc3_examples():
    free, pair = brute_oddc3_free(c5plus())
    assert not free and sorted(c.length for c in pair) == [3, 5]
    assert brute_oddc3_free(complete_graph(4)) == (True, None)
    assert brute_oddc3_free(cycle_graph(6)) == (True, None)


def test_brute_tok4_examples():
    branch, sides = brute_tok4(complete_graph(4))
    assert sorted(branch) == [1, 2, 3, 4] and len(sides) == 6
    assert brute_tok4(cycle_graph(5)) is None
    assert brute_tok4(gen_hk(2)) is None
    with pytest.raises(ScaleBoundExceeded):
        brute_tok4(gen_hk(3))


def test_enum_matroid_circuits_counts():
    f = fano()
    assert len(enum_matroid_circuits(list(f.columns), f.nrows)) == 14
    for g, n in ((cycle_graph(5), 1), (complete_graph(4), 7)):
        m = from_graph(g)
        assert len(enum_matroid_circuits(list(m.columns), m.nrows)) == n


def test_scale_bounds_are_loud():
    with pytest.raises(ScaleBoundExceeded):
        enum_circuits(gen_hk(3), max_edges=10)


def test_nullspace():
    # rows of the incidence matrix of a triangle: kernel spanned by the all-ones vector
    assert nullspace_gf2([0b011, 0b110, 0b101], 3) == [0b111]


@given(multigraphs(max_vertices=6, max_edges=10))
@settings(max_examples=200, deadline=None)
def test_graph_and_matroid_circuits_agree(g):
    m = from_graph(g)
    mine = {frozenset(c.edges) for c in enum_circuits(g)}
    theirs = {m.unmask(c) for c in enum_matroid_circuits(list(m.columns), m.nrows)}
    assert mine == theirs


@given(connected_multigraphs(max_vertices=6, max_edges=10))
@settings(max_examples=150, deadline=None)
def test_bipartite_iff_no_odd_circuit(g):
    assert is_bipartite(g)[0] == all(c.length % 2 == 0 for c in enum_circuits(g))


def test_enum_paths_c5():
    lengths = sorted(p.length for p in enum_paths(cycle_graph(5), 1, 3))
    assert lengths == [2, 3]
