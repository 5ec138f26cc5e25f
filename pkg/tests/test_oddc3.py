import pytest
from hypothesis import given, settings

from earparity.errors import PreconditionError
from earparity.graph import (CircuitSeq, Graph, PathSeq, c3plus, c5plus, complete_graph,
                             cycle_graph, gen_hk, gen_totally_odd_subdivision,
                             graph_from_pairs, is_two_connected)
from earparity.oddc3 import (FreeCert, OddC3Cert, decide_oddc3_free, extract_from_even_pair,
                             find_strict_oddc3, line_graph_h_perfect, make_cert, oddc3_problem,
                             verify_oddc3)
from earparity.oracles import brute_oddc3_free
from strategies import connected_multigraphs, multigraphs, two_connected_graphs

TRIANGLE = CircuitSeq((1, 2, 3), (0, 1, 5))
C5 = CircuitSeq((1, 2, 3, 4, 5), (0, 1, 2, 3, 4))


def c5plus_cert(p3=PathSeq((1, 2, 3), (0, 1))):
    g = c5plus()
    return g, make_cert(g, [PathSeq((1, 3), (5,)), PathSeq((1, 5, 4, 3), (4, 3, 2)), p3])


def test_verify_c5plus_cert():
    g, cert = c5plus_cert()
    assert verify_oddc3(g, cert)
    assert sorted(p.length for p in (cert.p1, cert.p2, cert.p3)) == [1, 2, 3]


def test_verify_rejects_odd_p3_and_missing_edge():
    g = c5plus()
    bad = OddC3Cert(g, 1, 3, PathSeq((1, 3), (5,)), PathSeq((1, 5, 4, 3), (4, 3, 2)),
                    PathSeq((1, 5, 4, 3), (4, 3, 2)))
    assert not verify_oddc3(g, bad)
    missing = OddC3Cert(g, 1, 3, PathSeq((1, 3), (5,)), PathSeq((1, 5, 4, 3), (4, 3, 2)),
                        PathSeq((1, 2, 3), (0, 99)))
    assert not verify_oddc3(g, missing)
    assert "99" in oddc3_problem(g, missing)


def test_extract_c5plus_case_shared_vertices():
    g = c5plus()
    cert = extract_from_even_pair(g, TRIANGLE, C5)
    assert verify_oddc3(g, cert)
    assert {cert.u, cert.v} == {1, 3}
    assert sorted(p.length for p in (cert.p1, cert.p2, cert.p3)) == [1, 2, 3]


def test_extract_h2_triangle_and_five_circuit():
    g = gen_hk(2)
    tri = CircuitSeq((0, 1, 2), (0, 1, 2))
    five = CircuitSeq((1, 2, 3, 4, 0), (1, 5, 4, 3, 0))
    assert len(set(tri.edges) & set(five.edges)) == 2
    cert = extract_from_even_pair(g, tri, five)
    assert verify_oddc3(g, cert)


def test_extract_vertex_disjoint_circuits():
    g = graph_from_pairs([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4)])
    c1 = CircuitSeq((0, 1, 2), (0, 1, 2))
    c2 = CircuitSeq((3, 4, 5), (3, 4, 5))
    cert = extract_from_even_pair(g, c1, c2)
    assert verify_oddc3(g, cert)


def test_extract_preconditions():
    g = c5plus()
    with pytest.raises(PreconditionError):
        extract_from_even_pair(g, TRIANGLE, TRIANGLE)
    with pytest.raises(PreconditionError):
        extract_from_even_pair(g, CircuitSeq((1, 3, 4, 5), (5, 2, 3, 4)), C5)


def test_decide_examples():
    k4 = decide_oddc3_free(complete_graph(4))
    assert isinstance(k4, FreeCert)
    (blk,) = k4.blocks
    assert blk.kind == "basis" and len(blk.basis) == 3
    res = decide_oddc3_free(c5plus())
    assert isinstance(res, OddC3Cert) and set(res.edges) == set(range(6))


@pytest.mark.parametrize("lengths", [(1, 1, 1, 1, 1, 1), (3, 1, 1, 1, 1, 3), (5, 3, 1, 3, 1, 1)])
def test_totally_odd_k4_is_free(lengths):
    g = gen_totally_odd_subdivision(complete_graph(4), dict(enumerate(lengths)))
    assert isinstance(decide_oddc3_free(g), FreeCert)


def test_find_strict_examples():
    assert find_strict_oddc3(c3plus()) is None
    g = Graph((), dict(cycle_graph(5).edges) | {5: (1, 2)})
    cert = find_strict_oddc3(g)
    assert cert.strict and verify_oddc3(g, cert)
    assert sorted(p.length for p in (cert.p1, cert.p2, cert.p3)) == [1, 1, 4]
    cert = find_strict_oddc3(c5plus())
    assert cert.strict and verify_oddc3(c5plus(), cert)


def test_line_graph_h_perfect_examples():
    assert line_graph_h_perfect(complete_graph(4)).status == "h_perfect"
    v = line_graph_h_perfect(c5plus())
    assert v.status == "not_h_perfect" and verify_oddc3(c5plus(), v.cert)
    assert line_graph_h_perfect(cycle_graph(6)).status == "h_perfect"


@given(multigraphs(max_vertices=7, max_edges=12))
@settings(max_examples=300, deadline=None)
def test_decide_agrees_with_brute_force(g):
    res = decide_oddc3_free(g)
    free, _ = brute_oddc3_free(g)
    assert isinstance(res, FreeCert) == free
    if not free:
        assert verify_oddc3(g, res)


@given(connected_multigraphs(max_vertices=6, max_edges=10))
@settings(max_examples=200, deadline=None)
def test_strict_certs_are_strict_and_valid(g):
    cert = find_strict_oddc3(g)
    if cert is not None:
        assert cert.strict and verify_oddc3(g, cert)


@given(two_connected_graphs(max_edges=13))
@settings(max_examples=150, deadline=None)
def test_two_connected_certificates_cover_their_union(g):
    res = decide_oddc3_free(g)
    if isinstance(res, OddC3Cert):
        assert is_two_connected(g.edge_subgraph(res.edges))
