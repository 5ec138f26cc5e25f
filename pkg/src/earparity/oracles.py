"""Brute-force reference implementations.

Nothing here imports the decision algorithms: traversal, cycle-space and
parity logic are written again from scratch so that the test suite can
compare two independent routes to the same answer.
"""

from __future__ import annotations

from itertools import combinations

from .errors import ScaleBoundExceeded
from .graph import CircuitSeq, Graph, PathSeq

__all__ = [
    "nullspace_gf2",
    "enum_circuit_masks",
    "enum_circuits",
    "brute_oddc3_free",
    "brute_tok4",
    "enum_matroid_circuits",
    "enum_paths",
]


def nullspace_gf2(rows: list[int], ncols: int) -> list[int]:
    """Basis of {x : row . x = 0 for every row}, vectors as column bitmasks."""
    pivots = {}  # pivot column -> reduced row
    for r in rows:
        for col, prow in pivots.items():
            if r >> col & 1:
                r ^= prow
        if not r:
            continue
        col = (r & -r).bit_length() - 1
        for c2 in list(pivots):
            if pivots[c2] >> col & 1:
                pivots[c2] ^= r
        pivots[col] = r
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = 1 << free
        for col, prow in pivots.items():
            if prow >> free & 1:
                vec |= 1 << col
        basis.append(vec)
    return basis


def _span_iter(basis):
    """Every non-zero element of the span, Gray-code order."""
    cur = 0
    for i in range(1, 1 << len(basis)):
        cur ^= basis[(i & -i).bit_length() - 1]
        yield cur


def _incidence(g: Graph):
    inc = [0] * g.n
    for e, (a, b) in g.edges.items():
        bit = 1 << g.eindex[e]
        inc[g.vindex[a]] |= bit
        inc[g.vindex[b]] |= bit
    return inc


def enum_circuit_masks(g: Graph, max_edges: int = 16) -> list[int]:
    """Edge bitmasks of all circuits, sorted."""
    if g.m > max_edges:
        raise ScaleBoundExceeded("enum_circuits", g.m, max_edges)
    inc = _incidence(g)
    basis = nullspace_gf2(inc, g.m)
    # edges sharing an end, for the connectivity test
    touch = [0] * g.m
    for mask in inc:
        b = mask
        while b:
            low = b & -b
            touch[low.bit_length() - 1] |= mask
            b ^= low
    found = []
    for s in _span_iter(basis):
        if any((s & m).bit_count() > 2 for m in inc):
            continue
        seen = s & -s
        frontier = seen
        while frontier:
            grow = 0
            f = frontier
            while f:
                low = f & -f
                grow |= touch[low.bit_length() - 1]
                f ^= low
            grow &= s & ~seen
            seen |= grow
            frontier = grow
        if seen == s:
            found.append(s)
    found.sort(key=lambda m: [i for i in range(g.m) if m >> i & 1])
    return found


def _mask_to_circuit(g: Graph, mask: int) -> CircuitSeq:
    order = list(g.edges)
    es = [order[i] for i in range(g.m) if mask >> i & 1]
    # walk the 2-regular edge set from its smallest vertex
    inc = {}
    for e in es:
        for x in g.edges[e]:
            inc.setdefault(x, []).append(e)
    start = min(inc, key=g.vindex.get)
    first = min(inc[start], key=g.eindex.get)
    vs, cs = [start], [first]
    prev, cur = first, g.other(first, start)
    while cur != start:
        vs.append(cur)
        nxt = [e for e in inc[cur] if e != prev][0]
        cs.append(nxt)
        prev, cur = nxt, g.other(nxt, cur)
    return CircuitSeq(tuple(vs), tuple(cs))


def enum_circuits(g: Graph, max_edges: int = 16) -> list[CircuitSeq]:
    return [_mask_to_circuit(g, m) for m in enum_circuit_masks(g, max_edges)]


def _circuit_blocks(masks: list[int], m: int) -> list[int]:
    """Edge -> block label, merging edges that share a circuit."""
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in masks:
        first = (s & -s).bit_length() - 1
        b = s
        while b:
            low = b & -b
            parent[find(low.bit_length() - 1)] = find(first)
            b ^= low
    return [find(i) for i in range(m)]


def brute_oddc3_free(g: Graph, max_edges: int = 16):
    """``(True, None)`` or ``(False, (c1, c2))``: two odd circuits of one block meeting evenly."""
    masks = enum_circuit_masks(g, max_edges)
    label = _circuit_blocks(masks, g.m)
    odd = [s for s in masks if s.bit_count() & 1]
    for a, b in combinations(odd, 2):
        if label[(a & -a).bit_length() - 1] != label[(b & -b).bit_length() - 1]:
            continue
        if not (a & b).bit_count() & 1:
            return False, (_mask_to_circuit(g, a), _mask_to_circuit(g, b))
    return True, None


def brute_tok4(g: Graph, max_edges: int = 14):
    """A totally odd K4 subdivision as ``(branch vertices, six PathSeq)``, or None.

    Exhaustive over edge subsets: exactly four vertices of degree 3, the
    rest of degree 2, six branch-to-branch paths joining distinct pairs,
    all odd, and nothing left over.
    """
    if g.m > max_edges:
        raise ScaleBoundExceeded("brute_tok4", g.m, max_edges)
    order = list(g.edges)
    inc = _incidence(g)
    for size in range(6, g.m + 1):
        for combo in combinations(range(g.m), size):
            s = 0
            for i in combo:
                s |= 1 << i
            deg3 = []
            ok = True
            for vi, mask in enumerate(inc):
                d = (s & mask).bit_count()
                if d == 3:
                    deg3.append(vi)
                elif d not in (0, 2):
                    ok = False
                    break
            if not ok or len(deg3) != 4:
                continue
            res = _trace_branches(g, order, s, [g.vertices[i] for i in deg3])
            if res is not None:
                return res
    return None


def _trace_branches(g, order, s, branch):
    chosen = [order[i] for i in range(g.m) if s >> i & 1]
    adj = {}
    for e in chosen:
        a, b = g.edges[e]
        adj.setdefault(a, []).append((b, e))
        adj.setdefault(b, []).append((a, e))
    bset = set(branch)
    used = set()
    paths = {}
    for x in branch:
        for y, e in adj[x]:
            if e in used:
                continue
            vs, es = [x, y], [e]
            used.add(e)
            while vs[-1] not in bset:
                cur = vs[-1]
                nxt = [(w, f) for w, f in adj[cur] if f != es[-1]]
                w, f = nxt[0]
                if f in used:
                    return None
                used.add(f)
                vs.append(w)
                es.append(f)
            key = frozenset((vs[0], vs[-1]))
            if len(key) < 2 or key in paths or len(es) % 2 == 0:
                return None
            paths[key] = PathSeq(tuple(vs), tuple(es))
    if len(paths) != 6 or len(used) != len(chosen):
        return None
    return tuple(branch), paths


def enum_matroid_circuits(columns: list[int], nrows: int, max_dim: int = 20) -> list[int]:
    """Circuits of the binary matroid with the given columns, as element bitmasks.

    ``columns[j]`` is column j as a row bitmask.  Cycles are enumerated
    from a null-space basis and kept when minimal.
    """
    n = len(columns)
    rows = []
    for r in range(nrows):
        mask = 0
        for j, col in enumerate(columns):
            if col >> r & 1:
                mask |= 1 << j
        rows.append(mask)
    basis = nullspace_gf2(rows, n)
    if len(basis) > max_dim:
        raise ScaleBoundExceeded("enum_matroid_circuits", len(basis), max_dim)
    out = []
    for s in _span_iter(basis):
        # a cycle is a circuit iff its columns have rank |s| - 1
        rank_rows = {}
        b = s
        while b:
            low = b & -b
            col = columns[low.bit_length() - 1]
            while col:
                top = col.bit_length() - 1
                if top not in rank_rows:
                    rank_rows[top] = col
                    break
                col ^= rank_rows[top]
            b ^= low
        if len(rank_rows) == s.bit_count() - 1:
            out.append(s)
    out.sort(key=lambda m: [i for i in range(n) if m >> i & 1])
    return out


def enum_paths(g: Graph, u, v, max_edges: int = 16) -> list[PathSeq]:
    """Every u-v path, by plain depth-first search."""
    if g.m > max_edges:
        raise ScaleBoundExceeded("enum_paths", g.m, max_edges)
    out = []
    vs, es = [u], []
    onpath = {u}

    def dfs(x):
        if x == v:
            out.append(PathSeq(tuple(vs), tuple(es)))
            return
        for y, e in g.adj[x]:
            if y in onpath:
                continue
            onpath.add(y)
            vs.append(y)
            es.append(e)
            dfs(y)
            vs.pop()
            es.pop()
            onpath.discard(y)

    dfs(u)
    return out
