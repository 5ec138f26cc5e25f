"""Totally odd K4 subdivisions in odd-C3+-free graphs.

The detector follows a constructive argument.  Take an optimal
ear-decomposition whose first ear is an odd circuit C.  Contract C to a
vertex c, find an odd theta through c in the contracted graph and turn
its three paths into three odd paths from a vertex to C.  Every step that
should be impossible in an odd-C3+-free graph instead produces an
explicit odd-C3+, so the detector always ends with a certificate.

Some steps of the argument only promise that a small union of paths
contains a theta or an odd-C3+.  These steps search that union
exhaustively (see ``_three_paths_in_union``).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations

from .errors import PreconditionError
from .graph import (CircuitSeq, Graph, PathSeq, blocks, check_circuit, check_path,
                    is_bipartite, is_two_connected)
from .paths import two_disjoint_paths
from .beta_phi import max_odd_ears, optimal_first_ear_odd
from .oddc3 import (OddC3Cert, cert_from_circuit_and_path, decide_oddc3_free,
                    extract_from_even_pair, make_cert)
from .oracles import brute_tok4, enum_circuit_masks

__all__ = [
    "OddThetaCert",
    "TOK4Cert",
    "Tok4Verdict",
    "CriticalityReport",
    "ComponentReport",
    "make_theta",
    "make_tok4",
    "theta_problem",
    "verify_theta",
    "tok4_problem",
    "verify_tok4",
    "contract_circuit",
    "find_odd_theta_through",
    "oddc3_or_tok4_from_three_paths",
    "detect_tok4",
    "criticality_predicates",
    "check_critical_components",
]

PAIR_ORDER = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


# -- certificates ------------------------------------------------------------


@dataclass(frozen=True)
class OddThetaCert:
    host: Graph = field(repr=False, compare=False)
    u: object
    v: object
    p1: PathSeq
    p2: PathSeq
    p3: PathSeq

    @property
    def paths(self) -> tuple:
        return (self.p1, self.p2, self.p3)

    @property
    def edges(self) -> tuple:
        return self.p1.edges + self.p2.edges + self.p3.edges

    @property
    def vertex_set(self) -> set:
        return set(self.p1.vertices) | set(self.p2.vertices) | set(self.p3.vertices)


@dataclass(frozen=True)
class TOK4Cert:
    """Branch vertices a, b, c, d and the six sides in the order ab, ac, ad, bc, bd, cd."""

    host: Graph = field(repr=False, compare=False)
    branch: tuple
    sides: tuple

    @property
    def edges(self) -> tuple:
        return tuple(e for p in self.sides for e in p.edges)

    def side(self, x, y) -> PathSeq:
        i, j = self.branch.index(x), self.branch.index(y)
        p = self.sides[PAIR_ORDER.index((min(i, j), max(i, j)))]
        return p if p.start == x else p.reversed()


def _edge_key(g, p):
    return (p.length, [g.eindex[e] for e in p.edges])


def make_theta(host: Graph, paths) -> OddThetaCert:
    """Normalise three paths with common ends: u has the smaller index, paths by (length, edges)."""
    paths = list(paths)
    a, b = paths[0].start, paths[0].end
    u, v = (a, b) if host.vindex[a] <= host.vindex[b] else (b, a)
    oriented = sorted((p if p.start == u else p.reversed() for p in paths),
                      key=lambda p: _edge_key(host, p))
    return OddThetaCert(host, u, v, *oriented)


def make_tok4(host: Graph, branch, sides: dict) -> TOK4Cert:
    """Normalise ``sides`` (keyed by frozenset pairs of branch vertices) into a TOK4Cert."""
    br = tuple(sorted(branch, key=host.vindex.get))
    out = []
    for i, j in PAIR_ORDER:
        p = sides[frozenset((br[i], br[j]))]
        out.append(p if p.start == br[i] else p.reversed())
    return TOK4Cert(host, br, tuple(out))


def _disjoint_problem(paths, ends) -> str | None:
    """Paths may share only vertices in ``ends``; no edge may repeat."""
    seen_v, seen_e = {}, set()
    for i, p in enumerate(paths):
        for x in p.inner:
            if x in ends:
                return f"path {i} passes through end vertex {x!r}"
            if x in seen_v:
                return f"paths {seen_v[x]} and {i} share vertex {x!r}"
            seen_v[x] = i
        for e in p.edges:
            if e in seen_e:
                return f"edge {e!r} used twice"
            seen_e.add(e)
    return None


def theta_problem(g: Graph, t: OddThetaCert) -> str | None:
    if t.u == t.v:
        return "ends coincide"
    for i, p in enumerate(t.paths):
        msg = check_path(g, p)
        if msg:
            return f"path {i}: {msg}"
        if {p.start, p.end} != {t.u, t.v}:
            return f"path {i} does not join the ends"
        if p.length % 2 == 0:
            return f"path {i} is even"
    return _disjoint_problem(t.paths, {t.u, t.v})


def verify_theta(g: Graph, t: OddThetaCert) -> bool:
    return theta_problem(g, t) is None


def tok4_problem(g: Graph, cert: TOK4Cert) -> str | None:
    br = cert.branch
    if len(br) != 4 or len(set(br)) != 4:
        return "need four distinct branch vertices"
    if len(cert.sides) != 6:
        return "need six sides"
    for (i, j), p in zip(PAIR_ORDER, cert.sides):
        msg = check_path(g, p)
        if msg:
            return f"side {br[i]!r}-{br[j]!r}: {msg}"
        if {p.start, p.end} != {br[i], br[j]}:
            return f"side {br[i]!r}-{br[j]!r} has the wrong ends"
        if p.length % 2 == 0:
            return f"side {br[i]!r}-{br[j]!r} is even"
    return _disjoint_problem(cert.sides, set(br))


def verify_tok4(g: Graph, cert: TOK4Cert) -> bool:
    return tok4_problem(g, cert) is None


# -- small-union searches ----------------------------------------------------


def _paths_between(u: Graph, x, y):
    out = []
    vs, es = [x], []
    on = {x}

    def dfs(a):
        for b, e in u.adj[a]:
            if b == y:
                out.append(PathSeq(tuple(vs) + (y,), tuple(es) + (e,)))
                continue
            if b in on:
                continue
            on.add(b)
            vs.append(b)
            es.append(e)
            dfs(b)
            vs.pop()
            es.pop()
            on.discard(b)

    dfs(x)
    return out


def _three_paths_in_union(g: Graph, eids, want: str, must=None):
    """Three internally disjoint paths with common ends inside the given edge set.

    ``want`` is "theta" (all odd) or "oddc3" (two odd, one even of length
    at least 2).  With ``must`` the union of the paths has to contain that
    vertex.  Returns the paths or None; the search is exhaustive.
    """
    u = g.edge_subgraph(set(eids))
    branch = sorted((v for v in u.vertices if u.degree(v) >= 3), key=g.vindex.get)
    for x, y in combinations(branch, 2):
        cands = _paths_between(u, x, y)
        cands.sort(key=lambda p: _edge_key(g, p))
        for trio in combinations(cands, 3):
            odd = sum(p.length % 2 for p in trio)
            if want == "theta" and odd != 3:
                continue
            if want == "oddc3" and (odd != 2 or any(
                    p.length % 2 == 0 and p.length < 2 for p in trio)):
                continue
            if _disjoint_problem(trio, {x, y}):
                continue
            if must is not None and not any(must in p.vertices for p in trio):
                continue
            return list(trio)
    return None


def _oddc3_in_union(g: Graph, eids) -> OddC3Cert | None:
    trio = _three_paths_in_union(g, eids, "oddc3")
    return None if trio is None else make_cert(g, trio)


def _escape_path(g: Graph, sources, targets, blocked) -> PathSeq | None:
    """Shortest path from ``sources`` to ``targets`` whose interior avoids ``blocked``."""
    prev = {}
    queue = deque()
    for s in sorted(sources, key=g.vindex.get):
        prev[s] = None
        queue.append(s)
    while queue:
        x = queue.popleft()
        for y, e in g.adj[x]:
            if y in prev:
                continue
            if y in targets:
                vs, es = [y], [e]
                node = x
                while node is not None:
                    vs.append(node)
                    if prev[node] is not None:
                        es.append(prev[node][1])
                        node = prev[node][0]
                    else:
                        node = None
                return PathSeq(tuple(reversed(vs)), tuple(reversed(es)))
            if y in blocked:
                continue
            prev[y] = (x, e)
            queue.append(y)
    return None


# -- odd thetas --------------------------------------------------------------


def _two_connected_multi(g: Graph) -> bool:
    """2-connected as a multigraph: two vertices joined by at least two edges also count."""
    if g.n == 2:
        return g.m >= 2
    return is_two_connected(g)


def find_odd_theta_through(g: Graph, h_sub: Graph, p: PathSeq, target) -> OddThetaCert:
    """An odd theta of the bipartite graph ``g`` that contains ``target``.

    ``h_sub`` is a 2-connected subgraph and ``p`` an odd ear of it.  Two
    internally disjoint paths Q, R of ``h_sub`` join the ends of ``p``; an
    odd piece of Q between consecutive vertices of R closes a theta with
    R and p.  If ``target`` is missed, two paths from it to the theta meeting
    only at ``target`` are added and a theta through it is picked from the union.
    """
    bip, _ = is_bipartite(g)
    if not bip:
        raise PreconditionError("find_odd_theta_through needs a bipartite graph")
    if not _two_connected_multi(g):
        raise PreconditionError("find_odd_theta_through needs a 2-connected graph")
    if target not in g.vindex:
        raise PreconditionError(f"unknown target vertex {target!r}")
    for e, ends in h_sub.edges.items():
        if g.edges.get(e) is None or frozenset(g.edges[e]) != frozenset(ends):
            raise PreconditionError(f"edge {e!r} of the subgraph is not an edge of g")
    msg = check_path(g, p)
    if msg:
        raise PreconditionError(f"ear: {msg}")
    if p.length % 2 == 0:
        raise PreconditionError("the ear must be odd")
    u1, u2 = p.start, p.end
    if u1 not in h_sub.vindex or u2 not in h_sub.vindex:
        raise PreconditionError("the ear's ends must lie in the subgraph")
    if any(x in h_sub.vindex for x in p.inner) or any(e in h_sub.edges for e in p.edges):
        raise PreconditionError("the ear must be otherwise disjoint from the subgraph")
    res = two_disjoint_paths(h_sub, {u1}, {u2})
    if res is None:
        raise PreconditionError("the subgraph has no two disjoint paths between the ear's ends")
    q, r = res
    if q.length % 2 == 0 or r.length % 2 == 0:
        raise AssertionError("bipartite host gave an even path between the ear's ends")
    on_r = set(r.vertices)
    start = 0
    piece = None
    for i in range(1, len(q.vertices)):
        if q.vertices[i] in on_r:
            cand = PathSeq(q.vertices[start:i + 1], q.edges[start:i])
            if cand.length % 2:
                piece = cand
                break
            start = i
    if piece is None:
        raise AssertionError("odd path split into even pieces")
    closed = r + p.reversed()
    ring = CircuitSeq(closed.vertices[:-1], closed.edges)
    arc1, arc2 = ring.arcs(piece.start, piece.end)
    theta = make_theta(g, [piece, arc1, arc2])
    if target in theta.vertex_set:
        return theta
    res = two_disjoint_paths(g, {target}, theta.vertex_set)
    if res is None:
        raise AssertionError("Menger paths to the theta missing in a 2-connected graph")
    trio = _three_paths_in_union(g, theta.edges + res[0].edges + res[1].edges, "theta",
                                 must=target)
    if trio is None:
        raise AssertionError(f"no odd theta through {target!r} in the theta plus fan")
    return make_theta(g, trio)


# -- three paths to an odd circuit -------------------------------------------


def _check_three_paths(g, c, v, paths):
    msg = check_circuit(g, c)
    if msg:
        raise PreconditionError(f"circuit: {msg}")
    if not c.odd:
        raise PreconditionError("the circuit must be odd")
    on_c = set(c.vertices)
    if v in on_c:
        raise PreconditionError("v must lie outside the circuit")
    if len(paths) != 3:
        raise PreconditionError("need exactly three paths")
    oriented = []
    for i, p in enumerate(paths):
        msg = check_path(g, p)
        if msg:
            raise PreconditionError(f"path {i}: {msg}")
        if p.end == v:
            p = p.reversed()
        if p.start != v or p.end not in on_c:
            raise PreconditionError(f"path {i} must run from v to the circuit")
        if any(x in on_c for x in p.vertices[:-1]):
            raise PreconditionError(f"path {i} meets the circuit before its end")
        if p.length % 2 == 0:
            raise PreconditionError(f"path {i} is even")
        oriented.append(p)
    for a, b in combinations(range(3), 2):
        inner_a = set(oriented[a].vertices[1:-1])
        if inner_a & set(oriented[b].vertices[1:]) or \
                set(oriented[b].vertices[1:-1]) & set(oriented[a].vertices[1:]):
            raise PreconditionError(f"paths {a} and {b} are not inner-disjoint")
        if set(oriented[a].edges) & set(oriented[b].edges):
            raise PreconditionError(f"paths {a} and {b} share an edge")
    return oriented


def oddc3_or_tok4_from_three_paths(g: Graph, c: CircuitSeq, v, p1, p2, p3):
    """An odd-C3+ or a totally odd K4 from three odd paths joining ``v`` to an odd circuit."""
    if not is_two_connected(g):
        raise PreconditionError("oddc3_or_tok4_from_three_paths needs a 2-connected graph")
    ps = _check_three_paths(g, c, v, [p1, p2, p3])
    ends = [p.end for p in ps]
    k = len(set(ends))
    if k == 1:
        u = ends[0]
        on_c = set(c.vertices)
        on_p = set().union(*(p.vertices for p in ps))
        q = _escape_path(g, on_c - {u}, on_p - {u}, on_c | on_p)
        if q is None:
            raise AssertionError("2-connected graph has no escape path avoiding the attachment")
        s, t = q.start, q.end
        i = next(j for j in range(3) if t in ps[j].vertices)
        tail = ps[i].sub(t, v)
        r = c.arc_with_parity(u, s, (tail.length + q.length) % 2)
        rest = [ps[j] for j in range(3) if j != i]
        return make_cert(g, [r + q + tail] + rest)
    if k == 2:
        u = next(x for x in ends if ends.count(x) == 2)
        lone = next(p for p in ps if p.end != u)
        pair = [p for p in ps if p.end == u]
        q = c.arc_with_parity(lone.end, u, 1)
        return make_cert(g, [lone + q] + pair)
    pos = {x: i for i, x in enumerate(c.vertices)}
    order = sorted(range(3), key=lambda j: pos[ends[j]])
    a = [ends[j] for j in order]
    arcs = [c.arcs(a[0], a[1])[0], c.arcs(a[1], a[2])[0], c.arcs(a[2], a[0])[0]]
    if all(q.length % 2 for q in arcs):
        sides = {frozenset((v, p.end)): p for p in ps}
        for q in arcs:
            sides[frozenset((q.start, q.end))] = q
        return make_tok4(g, (v, *a), sides)
    found = _oddc3_in_union(g, c.edges + ps[0].edges + ps[1].edges + ps[2].edges)
    if found is None:
        raise AssertionError("even arc but no odd-C3+ in the circuit plus three paths")
    return found


# -- detection ---------------------------------------------------------------


@dataclass(frozen=True)
class Tok4Verdict:
    """status: "tok4" (cert is a TOK4Cert), "none" (phibar <= 1 or bipartite) or
    "breach" (cert is an OddC3Cert: the input was not odd-C3+-free)."""

    status: str
    cert: object = None
    phibar: int | None = None
    stage: str | None = None


def contract_circuit(g: Graph, c: CircuitSeq):
    """Identify the vertices of ``c`` into one new vertex; keep parallels, drop loops.

    Returns ``(H, cv)``; edges of H keep their ids in ``g``.
    """
    on_c = set(c.vertices)
    cv = g.fresh_vertex("c")
    edges = {}
    for e, (a, b) in g.edges.items():
        if e in c.edges:
            continue
        a2 = cv if a in on_c else a
        b2 = cv if b in on_c else b
        if a2 == b2:
            continue
        edges[e] = (a2, b2)
    keep = [x for x in g.vertices if x not in on_c] + [cv]
    return Graph(keep, edges, f"{g.name}/C"), cv


def _lift_walk(g: Graph, cv, vertices, edges):
    """Replace the contracted vertex at the ends of an H-walk by the real ends in g."""
    vs = list(vertices)
    if vs[0] == cv:
        vs[0] = g.other(edges[0], vs[1])
    if vs[-1] == cv:
        vs[-1] = g.other(edges[-1], vs[-2])
    return vs


def _contraction_breach(g, c, h, cv, d: CircuitSeq) -> OddC3Cert:
    if cv not in d.vertices:
        return extract_from_even_pair(g, c, d)
    walk = d.as_path_from(cv)
    vs = _lift_walk(g, cv, walk.vertices, walk.edges)
    if vs[0] == vs[-1]:
        return extract_from_even_pair(g, c, CircuitSeq(tuple(vs[:-1]), walk.edges))
    return cert_from_circuit_and_path(g, c, PathSeq(tuple(vs), walk.edges))


def _fallback(g: Graph, stage: str, phibar) -> Tok4Verdict:
    res = decide_oddc3_free(g)
    if isinstance(res, OddC3Cert):
        return Tok4Verdict("breach", res, phibar, stage)
    raise AssertionError(f"{stage} failed on an odd-C3+-free graph")


def detect_tok4(g: Graph, max_edges: int = 13, check_free: bool = True) -> Tok4Verdict:
    """Find a totally odd K4 subdivision in a simple 2-connected odd-C3+-free graph.

    With ``check_free`` the input is first decided for odd-C3+-freeness;
    otherwise a breach is only reported when a step of the construction
    exposes one.
    """
    if not g.is_simple():
        raise PreconditionError("detect_tok4 needs a simple graph")
    if not is_two_connected(g):
        raise PreconditionError("detect_tok4 needs a 2-connected graph")
    if check_free:
        res = decide_oddc3_free(g)
        if isinstance(res, OddC3Cert):
            return Tok4Verdict("breach", res, None, "precheck")
    val, d = max_odd_ears(g, max_edges)
    if val <= 1 or is_bipartite(g)[0]:
        return Tok4Verdict("none", None, val)
    d = optimal_first_ear_odd(g, d, max_edges)
    c = d.ears[0]
    on_c = set(c.vertices)
    h, cv = contract_circuit(g, c)

    # the contraction is bipartite
    bip, wit = is_bipartite(h)
    if not bip:
        return Tok4Verdict("breach", _contraction_breach(g, c, h, cv, wit), val, "contraction")

    # an odd theta through the contracted vertex
    i = next(j for j in range(1, len(d.ears)) if d.ears[j].length % 2)
    ear = d.ears[i]
    if ear.start in on_c and ear.end in on_c:
        return Tok4Verdict("breach", cert_from_circuit_and_path(g, c, ear), val, "odd ear")
    ear_h = PathSeq(tuple(cv if x in on_c else x for x in ear.vertices), ear.edges)
    blk = next(b for b in blocks(h)[0] if ear.edges[0] in b)
    bsub = h.edge_subgraph(blk)
    earlier = set()
    for prev in d.ears[1:i]:
        kept = [e for e in prev.edges if e in h.edges]
        if kept and all(e in blk for e in kept):
            earlier.update(kept)
    rest = bsub.remove_edges(ear.edges).remove_vertices(ear_h.inner)
    theta = None
    for cand in (h.edge_subgraph(earlier) if earlier else None, rest):
        if cand is None:
            continue
        try:
            theta = find_odd_theta_through(bsub, cand, ear_h, cv)
            break
        except PreconditionError:
            continue
    if theta is None:
        return _fallback(g, "odd theta", val)

    # the contracted vertex is an end of the theta
    if cv not in (theta.u, theta.v):
        found = _oddc3_in_union(g, theta.edges + c.edges)
        if found is None:
            t_vs = set()
            for e in theta.edges:
                t_vs.update(g.edges[e])
            common = t_vs & on_c
            w = min(common, key=g.vindex.get) if common else None
            esc = _escape_path(g, on_c - {w}, t_vs - {w}, on_c | t_vs | {w})
            if esc is not None:
                found = _oddc3_in_union(g, theta.edges + c.edges + esc.edges)
        if found is None:
            return _fallback(g, "theta end", val)
        return Tok4Verdict("breach", found, val, "theta end")

    other = theta.v if theta.u == cv else theta.u
    lifted = []
    for p in theta.paths:
        p = p if p.start == other else p.reversed()
        lifted.append(PathSeq(tuple(_lift_walk(g, cv, p.vertices, p.edges)), p.edges))
    res = oddc3_or_tok4_from_three_paths(g, c, other, *lifted)
    if isinstance(res, TOK4Cert):
        return Tok4Verdict("tok4", res, val, "three paths")
    return Tok4Verdict("breach", res, val, "three paths")


# -- predicates on critical graphs -------------------------------------------


@dataclass(frozen=True)
class CriticalityReport:
    critical_non_bipartite: bool
    elementary: bool
    basic: bool
    critical_non_basic: bool


def _is_basic(g: Graph) -> bool:
    """Once-subdivided graph: some 2-colouring has one colour class of degree-2 vertices."""
    bip, col = is_bipartite(g)
    if not bip:
        return False
    for comp in g.components():
        if len(comp) == 1:
            continue
        ok = False
        for side in (0, 1):
            if all(g.degree(x) == 2 for x in comp if col[x] == side):
                ok = True
                break
        if not ok:
            return False
    return True


def _critical_non_bipartite(g: Graph, max_edges) -> bool:
    if is_bipartite(g)[0]:
        return False
    odd = [s for s in enum_circuit_masks(g, max_edges) if s.bit_count() % 2]
    return all(a & b for a, b in combinations(odd, 2))


def criticality_predicates(g: Graph, max_edges: int = 16) -> CriticalityReport:
    """The four predicates evaluated from their definitions by circuit enumeration."""
    cnb = _critical_non_bipartite(g, max_edges)
    elem = cnb and any(is_bipartite(g.remove_edges([e]))[0] for e in g.edges)
    basic = _is_basic(g)
    cnbasic = not basic and any(_is_basic(g.remove_edges([e])) for e in g.edges)
    return CriticalityReport(cnb, elem, basic, cnbasic)


@dataclass(frozen=True)
class ComponentReport:
    ok: bool
    components: tuple = ()  # (vertices, edges, passed) per component with edges


def check_critical_components(g: Graph, c: CircuitSeq, max_edges: int = 14) -> ComponentReport:
    """For each component K of g - E(c) check that c plus K is elementary critical non-bipartite."""
    if is_bipartite(g)[0]:
        raise PreconditionError("check_critical_components needs a non-bipartite graph")
    msg = check_circuit(g, c)
    if msg:
        raise PreconditionError(f"circuit: {msg}")
    if not c.odd:
        raise PreconditionError("the circuit must be odd")
    if brute_tok4(g, max_edges) is not None:
        raise PreconditionError("the graph contains a totally odd K4 subdivision")
    rest = g.remove_edges(c.edges)
    out = []
    for comp in rest.components():
        inside = set(comp)
        es = [e for e, (a, b) in rest.edges.items() if a in inside]
        if not es:
            continue
        h = g.edge_subgraph(list(c.edges) + es)
        rep = criticality_predicates(h, max_edges)
        out.append((tuple(comp), tuple(es), rep.elementary))
    return ComponentReport(all(t[2] for t in out), tuple(out))
