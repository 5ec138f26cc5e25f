"""Parity-constrained paths and two vertex-disjoint {S, T}-paths.

The graph-level functions take a :class:`Graph`.  The ``*_adj`` helpers
work on a bare adjacency mapping ``v -> [(w, edge id), ...]`` so that
callers which grow a subgraph ear by ear can reuse them without
rebuilding graph objects.
"""

from __future__ import annotations

from collections import deque

from .errors import PreconditionError
from .graph import CircuitSeq, Graph, PathSeq, block_is_bridge, blocks, is_bipartite

__all__ = [
    "parity_path",
    "two_disjoint_paths",
    "even_path_ge4",
    "bfs_path_adj",
    "two_disjoint_paths_adj",
    "flex_parity_path_adj",
]


def _parity(p) -> int:
    if p in (0, 1):
        return int(p)
    if p == "odd":
        return 1
    if p == "even":
        return 0
    raise PreconditionError(f"parity must be 'odd', 'even', 0 or 1, got {p!r}")


def bfs_path_adj(adj, s, t, avoid=()) -> PathSeq | None:
    """Shortest s-t path in ``adj`` avoiding the vertices in ``avoid``."""
    if s == t:
        return PathSeq((s,), ())
    prev = {s: None}
    queue = deque([s])
    blocked = set(avoid)
    while queue:
        x = queue.popleft()
        for y, e in adj[x]:
            if y in prev or y in blocked:
                continue
            prev[y] = (x, e)
            if y == t:
                vs, es = [t], []
                while prev[vs[-1]] is not None:
                    px, pe = prev[vs[-1]]
                    es.append(pe)
                    vs.append(px)
                return PathSeq(tuple(vs[::-1]), tuple(es[::-1]))
            queue.append(y)
    return None


# -- two disjoint paths ------------------------------------------------------

_SRC = ("src",)
_SNK = ("snk",)


def two_disjoint_paths_adj(adj, s_set, t_set):
    """Two vertex-disjoint {S, T}-paths via unit vertex-capacity flow.

    Internal vertices avoid S and T.  A vertex in both sets may serve as a
    path of length 0.  A singleton S (or T) vertex may be shared by both
    paths.  Returns ``(P, Q)`` with each path oriented from S to T, or None.
    """
    S, T = set(s_set), set(t_set)
    if not S or not T:
        raise PreconditionError("both vertex sets must be non-empty")
    s_cap = 2 if len(S) == 1 else 1
    t_cap = 2 if len(T) == 1 else 1
    flow = {}
    incoming = {}

    def cap(x, y):
        if x is _SRC:
            return s_cap
        if y is _SNK:
            return t_cap
        v, side = x
        if side == 0:
            return (s_cap if v in S else 1) if y == (v, 1) else 0
        # parallel edges can carry one path each
        return sum(1 for w, _ in adj[v] if w == y[0])

    def forward(x):
        if x is _SRC:
            for s in S:
                yield (s, 0)
            return
        v, side = x
        if side == 0:
            if v in T:
                yield _SNK
            else:
                yield (v, 1)
            return
        last = None
        for w, _ in adj[v]:
            if w != last and w not in S:
                yield (w, 0)
            last = w

    def augment():
        prev = {_SRC: None}
        queue = deque([_SRC])
        while queue:
            x = queue.popleft()
            cands = [y for y in forward(x) if cap(x, y) - flow.get((x, y), 0) > 0]
            cands += [y for y in incoming.get(x, ()) if flow.get((y, x), 0) > 0]
            for y in cands:
                if y in prev:
                    continue
                prev[y] = x
                if y is _SNK:
                    node = _SNK
                    while prev[node] is not None:
                        p = prev[node]
                        flow[(p, node)] = flow.get((p, node), 0) + 1
                        flow[(node, p)] = flow.get((node, p), 0) - 1
                        if flow[(p, node)] > 0:
                            incoming.setdefault(node, set()).add(p)
                        node = p
                    return True
                queue.append(y)
        return False

    for _ in range(2):
        if not augment():
            return None

    succ = {}
    for (a, b), f in flow.items():
        for _ in range(f):
            succ.setdefault(a, []).append(b)
    paths = []
    for _ in range(2):
        node = _SRC
        walk = []
        while node is not _SNK:
            node = succ[node].pop()
            if node is not _SNK and node[1] == 0:
                walk.append(node[0])
        # cut any loop left by cancelled flow
        seq = []
        pos = {}
        for v in walk:
            if v in pos:
                del seq[pos[v] + 1:]
                pos = {x: i for i, x in enumerate(seq)}
            else:
                pos[v] = len(seq)
                seq.append(v)
        paths.append(seq)

    out = []
    taken = set()
    for seq in paths:
        es = []
        for a, b in zip(seq, seq[1:]):
            e = next(e for w, e in adj[a] if w == b and e not in taken)
            taken.add(e)
            es.append(e)
        out.append(PathSeq(tuple(seq), tuple(es)))
    return out[0], out[1]


def two_disjoint_paths(g: Graph, s_set, t_set):
    for v in list(s_set) + list(t_set):
        if v not in g.vindex:
            raise PreconditionError(f"vertex {v!r} not in graph")
    res = two_disjoint_paths_adj(g.adj, sorted(s_set, key=g.vindex.get),
                                 sorted(t_set, key=g.vindex.get))
    if res is None:
        return None
    p, q = res
    if g.vindex[p.start] > g.vindex[q.start] or (
            p.start == q.start and g.vindex[p.end] > g.vindex[q.end]):
        p, q = q, p
    return p, q


# -- parity paths ------------------------------------------------------------


def flex_parity_path_adj(adj, x, y, parity: int, odd_circuit: CircuitSeq) -> PathSeq | None:
    """x-y path of the given parity in a 2-connected graph containing ``odd_circuit``.

    Route two disjoint paths from {x, y} to the circuit, then close with
    the circuit arc that fixes the parity.
    """
    cv = set(odd_circuit.vertices)
    if x in cv and y in cv:
        return odd_circuit.arc_with_parity(x, y, parity)
    res = two_disjoint_paths_adj(adj, [x, y], odd_circuit.vertices)
    if res is None:
        return None
    p, q = res
    if p.start != x:
        p, q = q, p
    need = (parity - p.length - q.length) % 2
    arc = odd_circuit.arc_with_parity(p.end, q.end, need)
    return p + arc + q.reversed()


def parity_path(g: Graph, u, v, parity) -> PathSeq | None:
    """A u-v path of the requested parity, or None if none exists."""
    want = _parity(parity)
    for x in (u, v):
        if x not in g.vindex:
            raise PreconditionError(f"vertex {x!r} not in graph")
    if u == v:
        raise PreconditionError("parity_path needs distinct ends")
    path = bfs_path_adj(g.adj, u, v)
    if path is None:
        return None
    if path.length % 2 == want:
        return path
    bl, _ = blocks(g)
    block_of = {}
    for i, b in enumerate(bl):
        for e in b:
            block_of[e] = i
    # split the path into maximal runs inside one block
    runs = []
    start = 0
    for k in range(1, path.length + 1):
        if k == path.length or block_of[path.edges[k]] != block_of[path.edges[start]]:
            runs.append((start, k))
            start = k
    for a, b in runs:
        blk = bl[block_of[path.edges[a]]]
        if block_is_bridge(g, blk):
            continue
        sub = g.edge_subgraph(blk)
        bip, witness = is_bipartite(sub)
        if bip:
            continue
        x, y = path.vertices[a], path.vertices[b]
        seg = flex_parity_path_adj(sub.adj, x, y, (b - a + 1) % 2, witness)
        head = PathSeq(path.vertices[:a + 1], path.edges[:a])
        tail = PathSeq(path.vertices[b:], path.edges[b:])
        return head + seg + tail
    return None


def even_path_ge4(g: Graph, u, v) -> PathSeq | None:
    """An even u-v path with at least 4 edges, or None.

    Tries each neighbour a of u in turn and looks for an odd a-v path in
    G - u with the a-v edges removed.
    """
    for x in (u, v):
        if x not in g.vindex:
            raise PreconditionError(f"vertex {x!r} not in graph")
    if u == v:
        raise PreconditionError("even_path_ge4 needs distinct ends")
    rest = g.remove_vertices([u])
    for a in g.neighbors(u):
        if a == v:
            continue
        h = rest.remove_edges(rest.edges_between(a, v))
        tail = parity_path(h, a, v, 1)
        if tail is not None:
            ua = g.edges_between(u, a)[0]
            return PathSeq((u,) + tail.vertices, (ua,) + tail.edges)
    return None
