import json

import pytest

from earparity import certificates as C
from earparity.beta_phi import beta_brute, max_odd_ears
from earparity.ears import ear_decomposition
from earparity.graph import (PathSeq, c5plus, complete_graph, cycle_graph,
                             gen_petersen_minus_vertex, theta_graph)
from earparity.matroid import (decide_oddc3_free_matroid, fano, from_graph,
                               is_bipartite_matroid)
from earparity.oddc3 import decide_oddc3_free
from earparity.tok4 import detect_tok4, find_odd_theta_through


def round_trip(doc):
    return json.loads(json.dumps(doc))


def test_free_and_oddc3_docs_verify():
    k4 = complete_graph(4)
    assert C.verify_graph_doc(k4, round_trip(C.free_doc(decide_oddc3_free(k4)))) is None
    g = c5plus()
    assert C.verify_graph_doc(g, round_trip(C.oddc3_doc(decide_oddc3_free(g)))) is None


def test_free_doc_is_not_accepted_for_wrong_graph():
    doc = round_trip(C.free_doc(decide_oddc3_free(complete_graph(4))))
    assert C.verify_graph_doc(c5plus(), doc) is not None


def test_beta_doc_must_be_optimal():
    g = gen_petersen_minus_vertex()
    res = beta_brute(g)
    doc = round_trip(C.beta_doc(res.value, res.witness))
    assert C.verify_graph_doc(g, doc) is None
    doc["value"] = 3
    doc["witness"] = doc["witness"][:3]
    assert C.verify_graph_doc(g, doc) is not None


def test_phibar_doc_checks_value():
    g = complete_graph(4)
    val, d = max_odd_ears(g)
    doc = round_trip(C.phibar_doc(val, d))
    assert C.verify_graph_doc(g, doc) is None
    weaker = round_trip(C.phibar_doc(1, ear_decomposition(g)))
    assert C.verify_graph_doc(g, weaker) is not None


def test_tok4_and_theta_docs():
    k4 = complete_graph(4)
    assert C.verify_graph_doc(k4, round_trip(C.tok4_doc(detect_tok4(k4)))) is None
    c5 = cycle_graph(5)
    assert C.verify_graph_doc(c5, round_trip(C.tok4_doc(detect_tok4(c5)))) is None
    # a "none" claim for K4 is false
    assert C.verify_graph_doc(k4, {"kind": "tok4_none", "phibar": 1}) is not None
    g = theta_graph(3, 3, 3)
    t = find_odd_theta_through(g, g.edge_subgraph(range(6)), PathSeq((0, 6, 7, 1), (6, 7, 8)), 0)
    assert C.verify_graph_doc(g, round_trip(C.theta_doc(t))) is None


def test_matroid_docs():
    f = fano()
    assert C.verify_matroid_doc(f, round_trip(C.matroid_free_doc(f, decide_oddc3_free_matroid(f)))) is None
    assert C.verify_matroid_doc(f, round_trip(C.matroid_bipartite_doc(f, is_bipartite_matroid(f)))) is None
    m = from_graph(c5plus())
    assert C.verify_matroid_doc(m, round_trip(C.matroid_oddc3_doc(m, decide_oddc3_free_matroid(m)))) is None


@pytest.mark.parametrize("doc", [{}, {"kind": "nope"}, {"kind": "oddc3"}, {"kind": "oddc3", "u": 1},
                                 {"kind": "ear_decomposition", "ears": "x"}])
def test_malformed_docs_are_rejected(doc):
    assert C.verify_graph_doc(complete_graph(4), doc) is not None
