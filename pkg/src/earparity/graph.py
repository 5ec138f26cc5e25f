"""Loopless multigraphs with stable vertex and edge identifiers.

Vertex and edge ids are opaque hashable tokens (ints or strings in
practice).  Every "smallest id" tie-break in the package uses
:func:`id_key`, so results are reproducible across runs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import count
from typing import Hashable, Iterable, Mapping

from .errors import ParseError, PreconditionError

__all__ = [
    "id_key",
    "Graph",
    "PathSeq",
    "CircuitSeq",
    "check_path",
    "check_circuit",
    "path_from_edges",
    "circuit_from_edges",
    "blocks",
    "block_is_bridge",
    "is_two_connected",
    "is_bipartite",
    "underlying_simple",
    "cycle_graph",
    "path_graph",
    "complete_graph",
    "star_graph",
    "c3plus",
    "c5plus",
    "bowtie",
    "theta_graph",
    "graph_from_pairs",
    "gen_hk",
    "gen_petersen_minus_vertex",
    "gen_totally_odd_subdivision",
    "parse_graph",
    "format_graph",
    "to_dot",
]


def id_key(x):
    """Total order on mixed int/str ids: ints first, then strings."""
    if isinstance(x, bool):
        return (2, repr(x))
    if isinstance(x, int):
        return (0, x, "")
    if isinstance(x, str):
        return (1, 0, x)
    return (2, repr(x))


class Graph:
    """An immutable loopless multigraph.

    ``edges`` maps an edge id to its pair of end vertices.  Parallel edges
    are distinct ids with the same ends.  Vertices appearing only as edge
    ends are added automatically.
    """

    __slots__ = ("name", "vertices", "edges", "vindex", "eindex", "adj", "_ncomp")

    def __init__(self, vertices: Iterable[Hashable] = (),
                 edges: Mapping[Hashable, tuple] | None = None, name: str = "G"):
        edges = dict(edges or {})
        vs = set(vertices)
        for e, (u, v) in edges.items():
            if u == v:
                raise PreconditionError(f"edge {e!r} is a loop at {u!r}")
            vs.add(u)
            vs.add(v)
        self.name = name
        self.vertices = tuple(sorted(vs, key=id_key))
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        order = sorted(edges, key=id_key)
        self.edges = {e: tuple(edges[e]) for e in order}
        self.eindex = {e: i for i, e in enumerate(order)}
        adj = {v: [] for v in self.vertices}
        for e, (u, v) in self.edges.items():
            adj[u].append((v, e))
            adj[v].append((u, e))
        vi, ei = self.vindex, self.eindex
        for v in adj:
            adj[v].sort(key=lambda t: (vi[t[0]], ei[t[1]]))
            adj[v] = tuple(adj[v])
        self.adj = adj
        self._ncomp = None

    # -- basic queries ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __repr__(self):
        return f"Graph({self.name!r}, n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (set(self.vertices) == set(other.vertices)
                and {e: frozenset(p) for e, p in self.edges.items()}
                == {e: frozenset(p) for e, p in other.edges.items()})

    def __hash__(self):
        return hash((self.vertices, tuple(self.edges)))

    def ends(self, e):
        return self.edges[e]

    def other(self, e, v):
        a, b = self.edges[e]
        if v == a:
            return b
        if v == b:
            return a
        raise KeyError(f"{v!r} is not an end of edge {e!r}")

    def degree(self, v) -> int:
        return len(self.adj[v])

    def neighbors(self, v):
        seen = []
        for w, _ in self.adj[v]:
            if not seen or seen[-1] != w:
                seen.append(w)
        return seen

    def edges_between(self, u, v):
        return [e for w, e in self.adj[u] if w == v]

    def is_simple(self) -> bool:
        pairs = set()
        for u, v in self.edges.values():
            key = frozenset((u, v))
            if key in pairs:
                return False
            pairs.add(key)
        return True

    def edge_mask(self, eids: Iterable) -> int:
        mask = 0
        for e in eids:
            mask |= 1 << self.eindex[e]
        return mask

    def mask_edges(self, mask: int) -> list:
        order = list(self.edges)
        out = []
        while mask:
            low = mask & -mask
            out.append(order[low.bit_length() - 1])
            mask ^= low
        return out

    def components(self) -> list[list]:
        seen = set()
        comps = []
        for s in self.vertices:
            if s in seen:
                continue
            seen.add(s)
            comp = [s]
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y, _ in self.adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        queue.append(y)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def cyclomatic_number(self) -> int:
        if self._ncomp is None:
            self._ncomp = len(self.components())
        return self.m - self.n + self._ncomp

    # -- derived graphs ---------------------------------------------------

    def edge_subgraph(self, eids: Iterable, name: str | None = None) -> "Graph":
        return Graph((), {e: self.edges[e] for e in eids}, name or self.name)

    def induced_subgraph(self, vs: Iterable, name: str | None = None) -> "Graph":
        keep = set(vs)
        es = {e: p for e, p in self.edges.items() if p[0] in keep and p[1] in keep}
        return Graph(keep, es, name or self.name)

    def remove_vertices(self, vs: Iterable) -> "Graph":
        drop = set(vs)
        return self.induced_subgraph([v for v in self.vertices if v not in drop])

    def remove_edges(self, eids: Iterable) -> "Graph":
        drop = set(eids)
        return Graph(self.vertices, {e: p for e, p in self.edges.items() if e not in drop},
                     self.name)

    def fresh_vertex(self, hint: str = "x"):
        """A vertex id not used in this graph."""
        if all(isinstance(v, int) and not isinstance(v, bool) for v in self.vertices):
            return max(self.vertices, default=-1) + 1
        used = set(self.vertices)
        for i in count():
            cand = f"{hint}{i}"
            if cand not in used:
                return cand

    def fresh_edge_ids(self, k: int, hint: str = "e") -> list:
        if all(isinstance(e, int) and not isinstance(e, bool) for e in self.edges):
            start = max(self.edges, default=-1) + 1
            return list(range(start, start + k))
        used = set(self.edges)
        out = []
        for i in count():
            if len(out) == k:
                break
            cand = f"{hint}{i}"
            if cand not in used:
                out.append(cand)
        return out


# -- paths and circuits ------------------------------------------------------


@dataclass(frozen=True)
class PathSeq:
    """Alternating vertex/edge sequence ``v0 e0 v1 ... e(k-1) vk``.

    A path of length 0 (a single vertex) is allowed as a degenerate value;
    :func:`check_path` rejects it unless ``allow_trivial`` is set.
    """

    vertices: tuple
    edges: tuple

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    @property
    def inner(self) -> tuple:
        return self.vertices[1:-1]

    def reversed(self) -> "PathSeq":
        return PathSeq(self.vertices[::-1], self.edges[::-1])

    def __add__(self, other: "PathSeq") -> "PathSeq":
        if self.end != other.start:
            raise ValueError("paths do not meet end to start")
        return PathSeq(self.vertices + other.vertices[1:], self.edges + other.edges)

    def sub(self, a, b) -> "PathSeq":
        """The subpath from vertex ``a`` to vertex ``b`` (either direction)."""
        i, j = self.vertices.index(a), self.vertices.index(b)
        if i <= j:
            return PathSeq(self.vertices[i:j + 1], self.edges[i:j])
        return PathSeq(self.vertices[j:i + 1], self.edges[j:i]).reversed()


@dataclass(frozen=True)
class CircuitSeq:
    """Cyclic sequence; ``edges[i]`` joins ``vertices[i]`` and ``vertices[i+1]``."""

    vertices: tuple
    edges: tuple

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def odd(self) -> bool:
        return len(self.edges) % 2 == 1

    def arcs(self, a, b) -> tuple[PathSeq, PathSeq]:
        """The two ``a``-``b`` paths along the circuit, both starting at ``a``."""
        k = len(self.vertices)
        i, j = self.vertices.index(a), self.vertices.index(b)
        if i == j:
            raise ValueError("arc ends must differ")
        fwd_v, fwd_e = [a], []
        t = i
        while t != j:
            fwd_e.append(self.edges[t])
            t = (t + 1) % k
            fwd_v.append(self.vertices[t])
        bwd_v, bwd_e = [a], []
        t = i
        while t != j:
            t = (t - 1) % k
            bwd_e.append(self.edges[t])
            bwd_v.append(self.vertices[t])
        return PathSeq(tuple(fwd_v), tuple(fwd_e)), PathSeq(tuple(bwd_v), tuple(bwd_e))

    def arc_with_parity(self, a, b, parity: int) -> PathSeq:
        for arc in self.arcs(a, b):
            if arc.length % 2 == parity:
                return arc
        raise ValueError("no arc of the requested parity (even circuit?)")

    def as_path_from(self, v) -> PathSeq:
        """Open the circuit at ``v``: the closed walk v ... v as a PathSeq-like value."""
        k = len(self.vertices)
        i = self.vertices.index(v)
        vs = tuple(self.vertices[(i + t) % k] for t in range(k)) + (v,)
        es = tuple(self.edges[(i + t) % k] for t in range(k))
        return PathSeq(vs, es)


def check_path(g: Graph, p: PathSeq, allow_trivial: bool = False) -> str | None:
    """Return a description of the first violated path invariant, or None."""
    if len(p.vertices) != len(p.edges) + 1:
        return "vertex/edge count mismatch"
    if not p.edges and not allow_trivial:
        return "path has length 0"
    if len(set(p.vertices)) != len(p.vertices):
        return "repeated vertex"
    for i, e in enumerate(p.edges):
        if e not in g.edges:
            return f"unknown edge {e!r}"
        if frozenset(g.edges[e]) != frozenset((p.vertices[i], p.vertices[i + 1])):
            return f"edge {e!r} is not incident to its neighbours in the sequence"
    if not p.edges and p.vertices[0] not in g.vindex:
        return f"unknown vertex {p.vertices[0]!r}"
    return None


def check_circuit(g: Graph, c: CircuitSeq) -> str | None:
    k = len(c.vertices)
    if k != len(c.edges):
        return "vertex/edge count mismatch"
    if k < 2:
        return "circuit shorter than 2"
    if len(set(c.vertices)) != k:
        return "repeated vertex"
    if len(set(c.edges)) != k:
        return "repeated edge"
    for i, e in enumerate(c.edges):
        if e not in g.edges:
            return f"unknown edge {e!r}"
        if frozenset(g.edges[e]) != frozenset((c.vertices[i], c.vertices[(i + 1) % k])):
            return f"edge {e!r} is not incident to its neighbours in the sequence"
    return None


def path_from_edges(g: Graph, start, eids: Iterable) -> PathSeq:
    """Walk ``eids`` in order from ``start``; no validity check beyond incidence."""
    vs = [start]
    es = []
    for e in eids:
        vs.append(g.other(e, vs[-1]))
        es.append(e)
    return PathSeq(tuple(vs), tuple(es))


def circuit_from_edges(g: Graph, eids: Iterable) -> CircuitSeq:
    """Order an edge set forming a circuit into a CircuitSeq.

    The circuit starts at its smallest vertex and leaves it along the
    smallest incident edge.  Raises ValueError if the set is not a circuit.
    """
    es = list(eids)
    if len(es) < 2:
        raise ValueError("a circuit has at least two edges")
    inc = {}
    for e in es:
        for x in g.edges[e]:
            inc.setdefault(x, []).append(e)
    if any(len(v) != 2 for v in inc.values()) or len(inc) != len(es):
        raise ValueError("edge set is not a circuit")
    start = min(inc, key=lambda x: g.vindex[x])
    first = min(inc[start], key=lambda e: g.eindex[e])
    vs, cs = [start], [first]
    cur = g.other(first, start)
    prev = first
    while cur != start:
        vs.append(cur)
        a, b = inc[cur]
        nxt = b if a == prev else a
        cs.append(nxt)
        cur = g.other(nxt, cur)
        prev = nxt
    if len(cs) != len(es):
        raise ValueError("edge set is not a single circuit")
    return CircuitSeq(tuple(vs), tuple(cs))


# -- connectivity ------------------------------------------------------------


def blocks(g: Graph) -> tuple[list[frozenset], set]:
    """Edge partition into blocks, plus the set of cut vertices.

    A block with exactly two vertices is a bridge (possibly carrying
    several parallel edges); every other block is a maximal 2-connected
    subgraph.  Blocks are sorted by their smallest edge index.
    """
    index, low = {}, {}
    found, cuts = [], set()
    edge_stack = []
    counter = 0
    for root in g.vertices:
        if root in index or not g.adj[root]:
            continue
        index[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, None, iter(g.adj[root]))]
        while stack:
            v, pe, it = stack[-1]
            pushed = False
            for w, e in it:
                if e == pe:
                    continue
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    edge_stack.append(e)
                    stack.append((w, e, iter(g.adj[w])))
                    if v == root:
                        root_children += 1
                    pushed = True
                    break
                if index[w] < index[v]:
                    if index[w] < low[v]:
                        low[v] = index[w]
                    edge_stack.append(e)
            if pushed:
                continue
            stack.pop()
            if not stack:
                continue
            u = stack[-1][0]
            if low[v] < low[u]:
                low[u] = low[v]
            if low[v] >= index[u]:
                comp = []
                while True:
                    f = edge_stack.pop()
                    comp.append(f)
                    if f == pe:
                        break
                found.append(frozenset(comp))
                if u != root:
                    cuts.add(u)
        if root_children >= 2:
            cuts.add(root)
    found.sort(key=lambda b: min(g.eindex[e] for e in b))
    return found, cuts


def block_is_bridge(g: Graph, block: Iterable) -> bool:
    vs = set()
    for e in block:
        vs.update(g.edges[e])
    return len(vs) == 2


def is_two_connected(g: Graph) -> bool:
    if g.n < 3 or not g.is_connected():
        return False
    bl, _ = blocks(g)
    return len(bl) == 1 and not block_is_bridge(g, bl[0])


def _bfs_tree(g: Graph, root, parent, depth):
    order = [root]
    parent[root] = None
    depth[root] = 0
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y, e in g.adj[x]:
            if y not in depth:
                depth[y] = depth[x] + 1
                parent[y] = (x, e)
                order.append(y)
                queue.append(y)
    return order


def _tree_circuit(parent, depth, x, y, closing):
    """Circuit formed by the tree paths from x and y to their LCA plus ``closing``."""
    left_v, left_e = [x], []
    right_v, right_e = [y], []
    a, b = x, y
    while depth[a] > depth[b]:
        pa, ea = parent[a]
        left_e.append(ea)
        left_v.append(pa)
        a = pa
    while depth[b] > depth[a]:
        pb, eb = parent[b]
        right_e.append(eb)
        right_v.append(pb)
        b = pb
    while a != b:
        pa, ea = parent[a]
        pb, eb = parent[b]
        left_e.append(ea)
        left_v.append(pa)
        right_e.append(eb)
        right_v.append(pb)
        a, b = pa, pb
    # left_v ends at the LCA; right_v also ends at it.
    vs = left_v[::-1] + right_v[:-1]
    es = left_e[::-1] + [closing] + right_e
    # vs: lca ... x, y ... ; es: edges along lca->x, x-y, y->lca
    return CircuitSeq(tuple(vs), tuple(es))


def is_bipartite(g: Graph):
    """``(True, coloring)`` with colours 0/1, or ``(False, odd CircuitSeq)``."""
    parent, depth = {}, {}
    for root in g.vertices:
        if root in depth:
            continue
        order = _bfs_tree(g, root, parent, depth)
        for x in order:
            for y, e in g.adj[x]:
                if depth[x] % 2 == depth[y] % 2:
                    return False, _tree_circuit(parent, depth, x, y, e)
    return True, {v: depth[v] % 2 for v in g.vertices}


def underlying_simple(g: Graph) -> tuple[Graph, dict]:
    """Keep the smallest edge id of every parallel class.

    Kept edges retain their ids, so the returned map is the identity on
    the simple graph's edges (simple edge -> representative).
    """
    rep = {}
    for e, (u, v) in g.edges.items():  # edges are in id order
        key = frozenset((u, v))
        if key not in rep:
            rep[key] = e
    keep = {e: g.edges[e] for e in rep.values()}
    return Graph(g.vertices, keep, g.name), {e: e for e in keep}


# -- generators --------------------------------------------------------------


def graph_from_pairs(pairs: Iterable[tuple], name: str = "G", vertices=()) -> Graph:
    """Graph whose edge ``i`` joins the i-th pair."""
    return Graph(vertices, {i: tuple(p) for i, p in enumerate(pairs)}, name)


def cycle_graph(n: int) -> Graph:
    return graph_from_pairs([(i, i % n + 1) for i in range(1, n + 1)], f"C{n}")


def path_graph(n: int) -> Graph:
    """Path on vertices 1..n."""
    return graph_from_pairs([(i, i + 1) for i in range(1, n)], f"P{n}", vertices=range(1, n + 1))


def complete_graph(n: int) -> Graph:
    return graph_from_pairs([(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)], f"K{n}")


def star_graph(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    return graph_from_pairs([(0, i) for i in range(1, k + 1)], f"K1,{k}")


def c3plus() -> Graph:
    """The triangle 1-2-3 with a second edge between 1 and 2."""
    return graph_from_pairs([(1, 2), (2, 3), (3, 1), (1, 2)], "C3plus")


def c5plus() -> Graph:
    """The 5-circuit 1-2-3-4-5 with the chord 1-3."""
    return graph_from_pairs([(1, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 3)], "C5plus")


def bowtie() -> Graph:
    return graph_from_pairs([(1, 2), (2, 3), (3, 1), (3, 4), (4, 5), (5, 3)], "bowtie")


def theta_graph(*lengths: int) -> Graph:
    """Vertices 0 and 1 joined by internally disjoint paths of the given lengths."""
    pairs = []
    nxt = 2
    for L in lengths:
        prev = 0
        for _ in range(L - 1):
            pairs.append((prev, nxt))
            prev = nxt
            nxt += 1
        pairs.append((prev, 1))
    return graph_from_pairs(pairs, "theta" + "-".join(map(str, lengths)))


def gen_hk(k: int) -> Graph:
    """k copies of C5plus glued at the degree-2 triangle vertex and one neighbour.

    Vertex 0 is the merged neighbour u, vertex 1 the merged triangle vertex
    v; the single shared uv edge has id 0.
    """
    if k < 2:
        raise PreconditionError("gen_hk needs k >= 2")
    u, v = 0, 1
    pairs = [(u, v)]
    for i in range(k):
        a3, a4, a5 = 2 + 3 * i, 3 + 3 * i, 4 + 3 * i
        # triangle u-v-a3 (v has degree 2 in it), then the long side u-a5-a4-a3
        pairs += [(v, a3), (a3, u), (u, a5), (a5, a4), (a4, a3)]
    return graph_from_pairs(pairs, f"H{k}")


def gen_petersen_minus_vertex() -> Graph:
    """Petersen graph (outer o1..o5, inner pentagram i1-i3-i5-i2-i4) minus o1."""
    outer = [(f"o{j}", f"o{j % 5 + 1}") for j in range(1, 6)]
    inner = [("i1", "i3"), ("i3", "i5"), ("i5", "i2"), ("i2", "i4"), ("i4", "i1")]
    spokes = [(f"o{j}", f"i{j}") for j in range(1, 6)]
    pairs = [p for p in outer + inner + spokes if "o1" not in p]
    return Graph((), {f"e{i}": p for i, p in enumerate(pairs)}, "petersen-minus-vertex")


def gen_totally_odd_subdivision(h: Graph, lengths: Mapping) -> Graph:
    """Replace each edge ``e`` of ``h`` by a path of odd length ``lengths[e]``.

    Edges of length 1 keep their id; longer paths get fresh vertex and edge ids.
    """
    for e in h.edges:
        L = lengths.get(e, 1)
        if L < 1 or L % 2 == 0:
            raise PreconditionError(f"length for edge {e!r} must be odd and >= 1, got {L}")
    ints = all(isinstance(v, int) and not isinstance(v, bool) for v in h.vertices)
    int_edges = all(isinstance(e, int) and not isinstance(e, bool) for e in h.edges)
    next_v = max(h.vertices, default=-1) + 1 if ints else None
    next_e = max(h.edges, default=-1) + 1 if int_edges else None
    used_v, used_e = set(h.vertices), set(h.edges)
    out = {}

    def new_vertex(tag):
        nonlocal next_v
        if ints:
            next_v += 1
            return next_v - 1
        cand = tag
        while cand in used_v:
            cand += "'"
        used_v.add(cand)
        return cand

    def new_edge(tag):
        nonlocal next_e
        if int_edges:
            next_e += 1
            return next_e - 1
        cand = tag
        while cand in used_e:
            cand += "'"
        used_e.add(cand)
        return cand

    for e, (a, b) in h.edges.items():
        L = lengths.get(e, 1)
        if L == 1:
            out[e] = (a, b)
            continue
        prev = a
        for j in range(1, L):
            w = new_vertex(f"{e}.{j}")
            out[new_edge(f"{e}/{j}")] = (prev, w)
            prev = w
        out[new_edge(f"{e}/{L}")] = (prev, b)
    return Graph(h.vertices, out, f"{h.name}-odd-subdivision")


# -- text format -------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the ``graph`` / ``v`` / ``e`` line format."""
    name = None
    vertices, edges = [], {}
    declared = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if name is None:
            if tok[0] != "graph" or len(tok) != 2:
                raise ParseError(f"line {lineno}: expected 'graph <name>'")
            name = tok[1]
            continue
        if tok[0] == "v" and len(tok) == 2:
            if tok[1] in declared:
                raise ParseError(f"line {lineno}: duplicate vertex {tok[1]!r}")
            declared.add(tok[1])
            vertices.append(tok[1])
        elif tok[0] == "e" and len(tok) == 4:
            eid, u, v = tok[1:]
            if eid in edges:
                raise ParseError(f"line {lineno}: duplicate edge id {eid!r}")
            if u == v:
                raise ParseError(f"line {lineno}: loop at {u!r}")
            for x in (u, v):
                if x not in declared:
                    raise ParseError(f"line {lineno}: undeclared vertex {x!r}")
            edges[eid] = (u, v)
        else:
            raise ParseError(f"line {lineno}: cannot parse {raw.strip()!r}")
    if name is None:
        raise ParseError("empty graph file")
    return Graph(vertices, edges, name)


def format_graph(g: Graph) -> str:
    lines = [f"graph {g.name}"]
    lines += [f"v {v}" for v in g.vertices]
    lines += [f"e {e} {u} {v}" for e, (u, v) in g.edges.items()]
    return "\n".join(lines) + "\n"


def to_dot(g: Graph) -> str:
    lines = [f'graph "{g.name}" {{']
    lines += [f'  "{v}";' for v in g.vertices]
    lines += [f'  "{u}" -- "{v}" [label="{e}"];' for e, (u, v) in g.edges.items()]
    lines.append("}")
    return "\n".join(lines) + "\n"
