"""JSON certificate documents and their verifiers.

Every document is a dict with a ``kind`` field first and a fixed field
order after it.  Ids are written as they appear in the host graph or
matroid.  Verifiers re-check each document against the host from scratch;
where a claim is an absence that no short witness certifies (optimal
values, no totally odd K4), the verifier recomputes it by brute force
within the oracle scale bounds.
"""

from __future__ import annotations

from itertools import combinations

from .errors import ParseError
from .graph import CircuitSeq, Graph, PathSeq, blocks, check_circuit, underlying_simple
from .cycle_space import XorBasis
from .beta_phi import beta_brute, max_odd_ears
from .ears import EarDecomposition, validate
from .oddc3 import FreeCert, OddC3Cert, oddc3_problem
from .paths import even_path_ge4
from .linegraph import line_graph
from .tok4 import TOK4Cert, OddThetaCert, Tok4Verdict, theta_problem, tok4_problem
from .oracles import brute_tok4
from .matroid import (BinaryMatroid, BipartiteResult, FreeMatroidCert, MatroidOddC3Cert,
                      is_circuit, matroid_blocks, matroid_oddc3_problem, sorted_elements)

__all__ = [
    "path_doc",
    "graph_doc",
    "oddc3_doc",
    "free_doc",
    "strict_free_doc",
    "ears_doc",
    "beta_doc",
    "phibar_doc",
    "tok4_doc",
    "theta_doc",
    "line_doc",
    "matroid_oddc3_doc",
    "matroid_free_doc",
    "matroid_bipartite_doc",
    "verify_graph_doc",
    "verify_matroid_doc",
    "BRUTE_BETA_EDGES",
    "BRUTE_TOK4_EDGES",
]

BRUTE_BETA_EDGES = 16
BRUTE_TOK4_EDGES = 14


# -- writers -----------------------------------------------------------------


def path_doc(p) -> dict:
    return {"vertices": list(p.vertices), "edges": list(p.edges)}


def graph_doc(g: Graph) -> dict:
    return {"name": g.name, "vertices": list(g.vertices),
            "edges": [[e, u, v] for e, (u, v) in g.edges.items()]}


def oddc3_doc(cert: OddC3Cert, kind: str = "oddc3") -> dict:
    return {"kind": kind, "u": cert.u, "v": cert.v,
            "p1": path_doc(cert.p1), "p2": path_doc(cert.p2), "p3": path_doc(cert.p3)}


def free_doc(cert: FreeCert) -> dict:
    out = []
    g = cert.host
    for b in cert.blocks:
        entry = {"kind": b.kind, "edges": sorted(b.edges, key=g.eindex.get)}
        if b.kind == "bipartite":
            entry["coloring"] = [[v, b.coloring[v]] for v in sorted(b.coloring, key=g.vindex.get)]
        elif b.kind == "basis":
            entry["circuits"] = [path_doc(c) for c in b.basis.circuits]
        out.append(entry)
    return {"kind": "oddc3_free", "blocks": out}


def strict_free_doc(h: Graph, simple_cert: FreeCert) -> dict:
    pairs = {}
    for e, (a, b) in h.edges.items():
        key = (a, b) if h.vindex[a] < h.vindex[b] else (b, a)
        pairs[key] = pairs.get(key, 0) + 1
    par = sorted((k for k, n in pairs.items() if n >= 2),
                 key=lambda k: (h.vindex[k[0]], h.vindex[k[1]]))
    return {"kind": "strict_free", "parallel_pairs": [list(k) for k in par],
            "simple": free_doc(simple_cert)}


def _ear_list(d: EarDecomposition) -> list:
    return [{"closed": i == 0, **path_doc(ear)} for i, ear in enumerate(d.ears)]


def ears_doc(d: EarDecomposition) -> dict:
    return {"kind": "ear_decomposition", "odd_ears": sum(e.length % 2 for e in d.ears),
            "ears": _ear_list(d)}


def beta_doc(value: int, witness: EarDecomposition | None) -> dict:
    return {"kind": "beta", "value": value,
            "witness": None if witness is None else _ear_list(witness)}


def phibar_doc(value: int, d: EarDecomposition) -> dict:
    return {"kind": "phibar", "value": value, "decomposition": _ear_list(d)}


def tok4_doc(v: Tok4Verdict) -> dict:
    if v.status == "tok4":
        c = v.cert
        return {"kind": "tok4", "branch": list(c.branch),
                "sides": [path_doc(p) for p in c.sides]}
    if v.status == "breach":
        return oddc3_doc(v.cert)
    return {"kind": "tok4_none", "phibar": v.phibar}


def theta_doc(t: OddThetaCert) -> dict:
    return {"kind": "odd_theta", "u": t.u, "v": t.v,
            "p1": path_doc(t.p1), "p2": path_doc(t.p2), "p3": path_doc(t.p3)}


def line_doc(root: Graph, inner: dict) -> dict:
    return {"kind": "line_root", "root": graph_doc(root), "inner": inner}


def matroid_oddc3_doc(m: BinaryMatroid, cert: MatroidOddC3Cert) -> dict:
    return {"kind": "matroid_oddc3", "c1": sorted_elements(m, cert.c1),
            "c2": sorted_elements(m, cert.c2)}


def matroid_free_doc(m: BinaryMatroid, cert: FreeMatroidCert) -> dict:
    out = []
    for blk, kind, circuits in cert.blocks:
        out.append({"kind": kind, "elements": sorted_elements(m, blk),
                    "circuits": [sorted_elements(m, c) for c in circuits]})
    return {"kind": "matroid_oddc3_free", "blocks": out}


def matroid_bipartite_doc(m: BinaryMatroid, res: BipartiteResult) -> dict:
    if res.bipartite:
        return {"kind": "matroid_bipartite",
                "circuits": [sorted_elements(m, c) for c in res.even_basis]}
    return {"kind": "matroid_odd_circuit", "circuit": sorted_elements(m, res.odd_circuit)}


# -- readers -----------------------------------------------------------------


def _field(doc, key, typ=None):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"certificate field {key!r} missing")
    val = doc[key]
    if typ is not None and not isinstance(val, typ):
        raise ParseError(f"certificate field {key!r} has the wrong type")
    return val


def _read_path(doc) -> PathSeq:
    vs = _field(doc, "vertices", list)
    es = _field(doc, "edges", list)
    return PathSeq(tuple(vs), tuple(es))


def _read_circuit(doc) -> CircuitSeq:
    p = _read_path(doc)
    return CircuitSeq(p.vertices, p.edges)


def _read_ears(items) -> tuple:
    if not isinstance(items, list) or not items:
        raise ParseError("ear list must be a non-empty list")
    ears = []
    for i, item in enumerate(items):
        closed = _field(item, "closed", bool)
        if closed != (i == 0):
            raise ParseError("only the first ear is closed")
        ears.append(_read_circuit(item) if closed else _read_path(item))
    return tuple(ears)


def _read_graph(doc) -> Graph:
    edges = {}
    for item in _field(doc, "edges", list):
        if not isinstance(item, list) or len(item) != 3:
            raise ParseError("graph edges are [id, u, v] triples")
        edges[item[0]] = (item[1], item[2])
    return Graph(_field(doc, "vertices", list), edges, str(doc.get("name", "G")))


# -- graph verifiers ---------------------------------------------------------


def _verify_oddc3(g, doc, strict=False):
    cert = OddC3Cert(g, _field(doc, "u"), _field(doc, "v"), _read_path(_field(doc, "p1")),
                     _read_path(_field(doc, "p2")), _read_path(_field(doc, "p3")))
    msg = oddc3_problem(g, cert)
    if msg:
        return msg
    if strict and not cert.strict:
        return "certificate is C3+ itself, not a strict odd-C3+"
    return None


def _verify_free(g: Graph, doc) -> str | None:
    """Blocks must match, each bipartite or carrying a totally odd circuit basis."""
    items = _field(doc, "blocks", list)
    want = {frozenset(b) for b in blocks(g)[0]}
    got = []
    for item in items:
        es = _field(item, "edges", list)
        if any(e not in g.edges for e in es):
            return "block lists an unknown edge"
        got.append(frozenset(es))
    if set(got) != want or len(got) != len(want):
        return "blocks do not match the graph's blocks"
    for item, blk in zip(items, got):
        kind = _field(item, "kind", str)
        verts = {x for e in blk for x in g.edges[e]}
        if kind == "bridge":
            if len(verts) != 2:
                return "a 'bridge' block has more than two vertices"
        elif kind == "bipartite":
            col = {}
            for pair in _field(item, "coloring", list):
                if not isinstance(pair, list) or len(pair) != 2 or pair[1] not in (0, 1):
                    return "colouring entries are [vertex, 0 or 1]"
                col[pair[0]] = pair[1]
            if set(col) != verts:
                return "colouring does not cover the block's vertices"
            if any(col[g.edges[e][0]] == col[g.edges[e][1]] for e in blk):
                return "colouring is not proper"
        elif kind == "basis":
            circuits = [_read_circuit(c) for c in _field(item, "circuits", list)]
            sub = g.edge_subgraph(blk)
            if len(circuits) != sub.m - sub.n + 1:
                return "basis size differs from the block's cyclomatic number"
            xb = XorBasis()
            vecs = []
            for c in circuits:
                msg = check_circuit(sub, c)
                if msg:
                    return f"basis member: {msg}"
                if not c.odd:
                    return "basis member is even"
                bits = sub.edge_mask(c.edges)
                if not xb.add(bits):
                    return "basis members are dependent"
                vecs.append(bits)
            for a, b in combinations(vecs, 2):
                if not (a & b).bit_count() % 2:
                    return "two basis members meet in an even number of edges"
        else:
            return f"unknown block kind {kind!r}"
    return None


def _verify_strict_free(g: Graph, doc) -> str | None:
    simple, _ = underlying_simple(g)
    msg = _verify_free(simple, _field(doc, "simple", dict))
    if msg:
        return f"underlying simple graph: {msg}"
    listed = {frozenset(p) for p in _field(doc, "parallel_pairs", list)}
    pairs = {}
    for a, b in g.edges.values():
        pairs[frozenset((a, b))] = pairs.get(frozenset((a, b)), 0) + 1
    actual = {k for k, n in pairs.items() if n >= 2}
    if listed != actual:
        return "parallel pair list does not match the graph"
    for k in sorted(actual, key=lambda k: sorted(g.vindex[x] for x in k)):
        a, b = sorted(k, key=g.vindex.get)
        if even_path_ge4(g, a, b) is not None:
            return f"parallel pair {a!r}-{b!r} has an even path of length at least 4"
    return None


def _verify_ears(g, doc, host=None) -> tuple[str | None, EarDecomposition | None]:
    d = EarDecomposition(host or g, _read_ears(_field(doc, "ears" if "ears" in doc else
                                                       "decomposition", list)))
    ok, msg = validate(d, host or g)
    return (None, d) if ok else (msg, None)


def _verify_beta(g: Graph, doc) -> str | None:
    value = _field(doc, "value", int)
    wit = doc.get("witness")
    if wit is not None:
        ears = _read_ears(wit)
        es = [e for ear in ears for e in ear.edges]
        if any(e not in g.edges for e in es):
            return "witness uses an unknown edge"
        h = g.edge_subgraph(es)
        d = EarDecomposition(h, ears)
        ok, msg = validate(d, h)
        if not ok:
            return f"witness: {msg}"
        for ear in ears:
            if ear.length % 2 == 0:
                return "witness has an even ear"
        if len(ears) != value:
            return "witness ear count differs from the value"
    elif value != 0:
        return "positive value without a witness"
    if g.m <= BRUTE_BETA_EDGES and beta_brute(g, BRUTE_BETA_EDGES).value != value:
        return "value is not the maximum"
    return None


def _verify_phibar(g: Graph, doc) -> str | None:
    value = _field(doc, "value", int)
    msg, d = _verify_ears(g, doc)
    if msg:
        return f"decomposition: {msg}"
    if sum(e.length % 2 for e in d.ears) != value:
        return "odd ear count differs from the value"
    if g.m <= 13 and max_odd_ears(g, 13)[0] != value:
        return "value is not the maximum"
    return None


def _verify_tok4(g: Graph, doc) -> str | None:
    branch = tuple(_field(doc, "branch", list))
    sides = tuple(_read_path(p) for p in _field(doc, "sides", list))
    return tok4_problem(g, TOK4Cert(g, branch, sides))


def _verify_tok4_none(g: Graph, doc) -> str | None:
    if g.m > BRUTE_TOK4_EDGES:
        return f"absence can only be checked up to {BRUTE_TOK4_EDGES} edges"
    if brute_tok4(g, BRUTE_TOK4_EDGES) is not None:
        return "graph contains a totally odd K4 subdivision"
    return None


def _verify_theta(g: Graph, doc) -> str | None:
    t = OddThetaCert(g, _field(doc, "u"), _field(doc, "v"), _read_path(_field(doc, "p1")),
                     _read_path(_field(doc, "p2")), _read_path(_field(doc, "p3")))
    return theta_problem(g, t)


def _verify_line(g: Graph, doc) -> str | None:
    root = _read_graph(_field(doc, "root", dict))
    if set(root.edges) != set(g.vertices):
        return "root edges do not correspond to the line graph's vertices"
    lg, _ = line_graph(root)
    if {frozenset(p) for p in lg.edges.values()} != {frozenset(p) for p in g.edges.values()}:
        return "line graph of the root differs from the input"
    inner = _field(doc, "inner", dict)
    msg = verify_graph_doc(root, inner)
    return None if msg is None else f"root certificate: {msg}"


_GRAPH_KINDS = {
    "oddc3": _verify_oddc3,
    "strict_oddc3": lambda g, d: _verify_oddc3(g, d, strict=True),
    "oddc3_free": _verify_free,
    "strict_free": _verify_strict_free,
    "ear_decomposition": lambda g, d: _verify_ears(g, d)[0],
    "beta": _verify_beta,
    "phibar": _verify_phibar,
    "tok4": _verify_tok4,
    "tok4_none": _verify_tok4_none,
    "odd_theta": _verify_theta,
    "line_root": _verify_line,
}


def verify_graph_doc(g: Graph, doc) -> str | None:
    """First problem with the certificate document, or None if it is accepted."""
    try:
        kind = _field(doc, "kind", str)
        if kind not in _GRAPH_KINDS:
            return f"unknown certificate kind {kind!r}"
        return _GRAPH_KINDS[kind](g, doc)
    except (ParseError, KeyError, ValueError, TypeError) as exc:
        return f"malformed certificate: {exc}"


# -- matroid verifiers -------------------------------------------------------


def _elements(m, items):
    out = frozenset(items)
    if len(out) != len(items) or any(e not in m.index for e in out):
        raise ParseError("element list has unknown or repeated elements")
    return out


def _verify_m_oddc3(m, doc):
    cert = MatroidOddC3Cert(_elements(m, _field(doc, "c1", list)),
                            _elements(m, _field(doc, "c2", list)))
    return matroid_oddc3_problem(m, cert)


def _independent_circuits(m, circuits, parity):
    xb = XorBasis()
    for c in circuits:
        if not is_circuit(m, c):
            return "listed set is not a circuit"
        if len(c) % 2 != parity:
            return "circuit has the wrong parity"
        if not xb.add(m.mask(c)):
            return "circuits are dependent"
    return None


def _verify_m_free(m, doc):
    items = _field(doc, "blocks", list)
    got = [_elements(m, _field(it, "elements", list)) for it in items]
    if set(got) != set(matroid_blocks(m)) or len(got) != len(set(got)):
        return "blocks do not match the matroid's blocks"
    for it, blk in zip(items, got):
        kind = _field(it, "kind", str)
        circuits = [_elements(m, c) for c in _field(it, "circuits", list)]
        sub = m.restrict(blk)
        if any(not c <= blk for c in circuits):
            return "circuit leaves its block"
        if kind == "coloop":
            if len(blk) != 1 or sub.rank != 1 or circuits:
                return "'coloop' block is not a single coloop"
            continue
        if len(circuits) != len(blk) - sub.rank:
            return "circuit count differs from the block's corank"
        if kind == "bipartite":
            msg = _independent_circuits(sub, circuits, 0)
        elif kind == "basis":
            msg = _independent_circuits(sub, circuits, 1)
            if msg is None and any(not len(a & b) % 2 for a, b in combinations(circuits, 2)):
                msg = "two basis members meet in an even number of elements"
        else:
            msg = f"unknown block kind {kind!r}"
        if msg:
            return msg
    return None


def _verify_m_bipartite(m, doc):
    circuits = [_elements(m, c) for c in _field(doc, "circuits", list)]
    if len(circuits) != len(m.elements) - m.rank:
        return "circuit count differs from the corank"
    return _independent_circuits(m, circuits, 0)


def _verify_m_odd_circuit(m, doc):
    c = _elements(m, _field(doc, "circuit", list))
    if not is_circuit(m, c):
        return "listed set is not a circuit"
    if len(c) % 2 == 0:
        return "circuit is even"
    return None


_MATROID_KINDS = {
    "matroid_oddc3": _verify_m_oddc3,
    "matroid_oddc3_free": _verify_m_free,
    "matroid_bipartite": _verify_m_bipartite,
    "matroid_odd_circuit": _verify_m_odd_circuit,
}


def verify_matroid_doc(m: BinaryMatroid, doc) -> str | None:
    try:
        kind = _field(doc, "kind", str)
        if kind not in _MATROID_KINDS:
            return f"unknown certificate kind {kind!r}"
        return _MATROID_KINDS[kind](m, doc)
    except (ParseError, KeyError, ValueError, TypeError) as exc:
        return f"malformed certificate: {exc}"
