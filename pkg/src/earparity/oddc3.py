"""Deciding odd-C3+-freeness with certificates in both directions.

An odd-C3+ is stored as two ends u, v and three internally disjoint u-v
paths: two of odd length and one of even length at least 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import PreconditionError
from .graph import (CircuitSeq, Graph, PathSeq, block_is_bridge, blocks, check_circuit,
                    check_path, is_bipartite, is_two_connected, underlying_simple)
from .cycle_space import CircuitBasis, circuit_vector, iter_odd_circuit_basis
from .paths import even_path_ge4, two_disjoint_paths

__all__ = [
    "OddC3Cert",
    "BlockCert",
    "FreeCert",
    "HPerfectVerdict",
    "make_cert",
    "oddc3_problem",
    "verify_oddc3",
    "cert_from_circuit_and_path",
    "extract_from_even_pair",
    "decide_oddc3_free",
    "find_strict_oddc3",
    "line_graph_h_perfect",
]


@dataclass(frozen=True)
class OddC3Cert:
    host: Graph = field(repr=False, compare=False)
    u: object
    v: object
    p1: PathSeq
    p2: PathSeq
    p3: PathSeq

    @property
    def strict(self) -> bool:
        return not (self.p1.length == 1 and self.p2.length == 1 and self.p3.length == 2)

    @property
    def edges(self) -> tuple:
        return self.p1.edges + self.p2.edges + self.p3.edges


def make_cert(host: Graph, paths) -> OddC3Cert:
    """Normalise three u-v paths (any orientation, any order) into a certificate.

    The end with the smaller dense index becomes u; the two odd paths are
    ordered by (length, edge indices).
    """
    paths = list(paths)
    a, b = paths[0].start, paths[0].end
    u, v = (a, b) if host.vindex[a] <= host.vindex[b] else (b, a)
    oriented = [p if p.start == u else p.reversed() for p in paths]
    odd = [p for p in oriented if p.length % 2]
    even = [p for p in oriented if p.length % 2 == 0]
    if len(odd) != 2 or len(even) != 1:
        raise ValueError("an odd-C3+ needs two odd paths and one even path")
    odd.sort(key=lambda p: (p.length, [host.eindex[e] for e in p.edges]))
    return OddC3Cert(host, u, v, odd[0], odd[1], even[0])


def oddc3_problem(g: Graph, cert: OddC3Cert) -> str | None:
    """Description of the first violated certificate invariant, or None."""
    if cert.u == cert.v:
        return "ends coincide"
    for name, p in (("p1", cert.p1), ("p2", cert.p2), ("p3", cert.p3)):
        msg = check_path(g, p)
        if msg:
            return f"{name}: {msg}"
        if p.start != cert.u or p.end != cert.v:
            return f"{name} does not run from u to v"
    if cert.p1.length % 2 == 0 or cert.p2.length % 2 == 0:
        return "p1 and p2 must be odd"
    if cert.p3.length % 2 or cert.p3.length < 2:
        return "p3 must be even with length at least 2"
    inner = [set(p.inner) for p in (cert.p1, cert.p2, cert.p3)]
    if inner[0] & inner[1] or inner[0] & inner[2] or inner[1] & inner[2]:
        return "paths share an internal vertex"
    es = cert.edges
    if len(set(es)) != len(es):
        return "paths share an edge"
    return None


def verify_oddc3(g: Graph, cert: OddC3Cert) -> bool:
    return oddc3_problem(g, cert) is None


def cert_from_circuit_and_path(g: Graph, circ: CircuitSeq, path: PathSeq) -> OddC3Cert:
    """An odd path with both ends on an odd circuit, otherwise outside it, plus the circuit."""
    a, b = path.start, path.end
    arcs = circ.arcs(a, b)
    return make_cert(g, [path, arcs[0], arcs[1]])


def _require_odd_circuit(g, c, name):
    msg = check_circuit(g, c)
    if msg:
        raise PreconditionError(f"{name} is not a circuit: {msg}")
    if not c.odd:
        raise PreconditionError(f"{name} is not odd")


def extract_from_even_pair(g: Graph, c1: CircuitSeq, c2: CircuitSeq) -> OddC3Cert:
    """Build an odd-C3+ from two odd circuits meeting in an even number of edges."""
    _require_odd_circuit(g, c1, "c1")
    _require_odd_circuit(g, c2, "c2")
    if len(set(c1.edges) & set(c2.edges)) % 2:
        raise PreconditionError("circuits meet in an odd number of edges")
    if not is_two_connected(g):
        raise PreconditionError("extract_from_even_pair needs a 2-connected graph")
    v2 = set(c2.vertices)
    e2 = set(c2.edges)
    shared = [x for x in c1.vertices if x in v2]
    if len(shared) >= 2:
        # cut c1 at the shared vertices; pick an odd piece that is not an edge of c2
        k = len(c1.vertices)
        start = c1.vertices.index(shared[0])
        seg_v, seg_e = [c1.vertices[start]], []
        for t in range(1, k + 1):
            idx = (start + t) % k
            seg_e.append(c1.edges[(start + t - 1) % k])
            seg_v.append(c1.vertices[idx])
            if c1.vertices[idx] in v2:
                piece = PathSeq(tuple(seg_v), tuple(seg_e))
                if piece.length % 2 and not (piece.length == 1 and piece.edges[0] in e2):
                    return cert_from_circuit_and_path(g, c2, piece)
                seg_v, seg_e = [c1.vertices[idx]], []
        raise AssertionError("no odd piece outside c2; parity argument violated")
    res = two_disjoint_paths(g, c1.vertices, c2.vertices)
    if res is None:
        raise AssertionError("Menger paths missing in a 2-connected graph")
    p, q = res
    need = (p.length + q.length + 1) % 2
    r = c1.arc_with_parity(p.start, q.start, need)
    connector = p.reversed() + r + q
    return cert_from_circuit_and_path(g, c2, connector)


@dataclass(frozen=True)
class BlockCert:
    """Freeness evidence for one block: kind is 'bridge', 'bipartite' or 'basis'."""

    edges: frozenset
    kind: str
    coloring: dict | None = None
    basis: CircuitBasis | None = None


@dataclass(frozen=True)
class FreeCert:
    host: Graph = field(repr=False, compare=False)
    blocks: tuple = ()


def _decide_block(g: Graph, sub: Graph, edges):
    if block_is_bridge(g, edges):
        return BlockCert(frozenset(edges), "bridge"), None
    bip, wit = is_bipartite(sub)
    if bip:
        return BlockCert(frozenset(edges), "bipartite", coloring=wit), None
    circuits, vectors = [], []
    for c in iter_odd_circuit_basis(sub):
        vec = circuit_vector(g, c)
        for i, w in enumerate(vectors):
            if not (w.bits & vec.bits).bit_count() & 1:
                return None, extract_from_even_pair(sub, circuits[i], c)
        circuits.append(c)
        vectors.append(vec)
    basis = CircuitBasis(g, tuple(circuits), tuple(vectors))
    return BlockCert(frozenset(edges), "basis", basis=basis), None


def decide_oddc3_free(g: Graph):
    """FreeCert if ``g`` has no odd-C3+, otherwise an OddC3Cert.

    Each non-bipartite block gets an odd circuit basis; members are checked
    against earlier members as they are produced and the first evenly
    meeting pair is turned into an odd-C3+.
    """
    out = []
    if g.m == 0:
        return FreeCert(g, ())
    for edges in blocks(g)[0]:
        sub = g.edge_subgraph(edges)
        bc, cert = _decide_block(g, sub, edges)
        if cert is not None:
            return make_cert(g, [cert.p1, cert.p2, cert.p3])
        out.append(bc)
    return FreeCert(g, tuple(out))


def find_strict_oddc3(h: Graph) -> OddC3Cert | None:
    """A strict odd-C3+ of a multigraph, or None.

    Parallel pairs joined by an even path of length at least 4 are tried
    first; otherwise the underlying simple graph is decided, where every
    odd-C3+ is strict.
    """
    pairs = {}
    for e, (a, b) in h.edges.items():
        key = (a, b) if h.vindex[a] < h.vindex[b] else (b, a)
        pairs.setdefault(key, []).append(e)
    for (a, b) in sorted(pairs, key=lambda k: (h.vindex[k[0]], h.vindex[k[1]])):
        par = pairs[(a, b)]
        if len(par) < 2:
            continue
        long_path = even_path_ge4(h, a, b)
        if long_path is not None:
            e1, e2 = par[0], par[1]
            return make_cert(h, [PathSeq((a, b), (e1,)), PathSeq((a, b), (e2,)), long_path])
    simple, _ = underlying_simple(h)
    res = decide_oddc3_free(simple)
    if isinstance(res, OddC3Cert):
        return make_cert(h, [res.p1, res.p2, res.p3])
    return None


@dataclass(frozen=True)
class HPerfectVerdict:
    status: str  # "h_perfect", "not_h_perfect" or "not_line_graph"
    cert: OddC3Cert | None = None
    root: Graph | None = None
    root_map: dict | None = None


def line_graph_h_perfect(h: Graph) -> HPerfectVerdict:
    """Verdict for the line graph of ``h``: h-perfect iff ``h`` has no strict odd-C3+."""
    cert = find_strict_oddc3(h)
    if cert is None:
        return HPerfectVerdict("h_perfect", root=h)
    return HPerfectVerdict("not_h_perfect", cert=cert, root=h)
