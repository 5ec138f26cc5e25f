"""Open ear-decompositions, their validation, and factor-criticality."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import PreconditionError, ScaleBoundExceeded
from .graph import CircuitSeq, Graph, PathSeq, check_circuit, check_path, is_two_connected

__all__ = [
    "EarDecomposition",
    "ear_decomposition",
    "complete_from",
    "validate",
    "odd_ear_count",
    "has_perfect_matching",
    "has_perfect_matching_brute",
    "is_factor_critical",
]


@dataclass(frozen=True)
class EarDecomposition:
    """Ear 0 is a CircuitSeq, every later ear a PathSeq."""

    host: Graph
    ears: tuple

    @property
    def parities(self) -> tuple:
        return tuple(ear.length % 2 for ear in self.ears)

    def __len__(self):
        return len(self.ears)

    def covered_edges(self) -> set:
        return {e for ear in self.ears for e in ear.edges}

    def covered_vertices(self) -> set:
        return {v for ear in self.ears for v in ear.vertices}


def odd_ear_count(d: EarDecomposition) -> int:
    return sum(ear.length % 2 for ear in d.ears)


def _prefix_problem(g: Graph, ears) -> str | None:
    if not ears:
        return "no ears"
    first = ears[0]
    if not isinstance(first, CircuitSeq):
        return "ear 0 is not a circuit"
    msg = check_circuit(g, first)
    if msg:
        return f"ear 0: {msg}"
    cov_v = set(first.vertices)
    cov_e = set(first.edges)
    for i, ear in enumerate(ears[1:], 1):
        if not isinstance(ear, PathSeq):
            return f"ear {i} is not a path"
        msg = check_path(g, ear)
        if msg:
            return f"ear {i}: {msg}"
        for e in ear.edges:
            if e in cov_e:
                return f"edge covered twice: {e!r} in ear {i}"
        if ear.start not in cov_v or ear.end not in cov_v:
            return f"ear {i} has an end outside the earlier ears"
        for x in ear.inner:
            if x in cov_v:
                return f"ear {i} has a stale internal vertex {x!r}"
        cov_v.update(ear.vertices)
        cov_e.update(ear.edges)
    return None


def validate(d: EarDecomposition, host: Graph | None = None) -> tuple[bool, str | None]:
    """``(True, None)`` or ``(False, first violated invariant)``."""
    g = host or d.host
    msg = _prefix_problem(g, d.ears)
    if msg:
        return False, msg
    covered = d.covered_edges()
    missing = [e for e in g.edges if e not in covered]
    if missing:
        return False, f"edge {missing[0]!r} not covered"
    if len(d.ears) != g.cyclomatic_number():
        return False, "ear count differs from |E| - |V| + 1"
    return True, None


def _chain_decomposition(g: Graph, first: CircuitSeq | None) -> list:
    """Schmidt's chain decomposition of a 2-connected graph.

    If ``first`` is given, the depth-first search walks along it from its
    first vertex, which makes it the first chain.
    """
    root = first.vertices[0] if first is not None else g.vertices[0]
    forced = {}
    if first is not None:
        k = len(first.vertices)
        for i in range(k - 1):
            forced[first.vertices[i]] = (first.vertices[i + 1], first.edges[i])
    order = {root: 0}
    preorder = [root]
    parent = {root: None}
    stack = [(root, None, iter(g.adj[root]))]
    if root in forced:
        stack = [(root, None, None)]
    while stack:
        v, pe, it = stack[-1]
        if it is None:
            # forced step along the starting circuit
            w, e = forced[v]
            stack[-1] = (v, pe, iter(g.adj[v]))
            order[w] = len(preorder)
            preorder.append(w)
            parent[w] = (v, e)
            nxt = None if w in forced else iter(g.adj[w])
            stack.append((w, e, nxt))
            continue
        for w, e in it:
            if w not in order:
                order[w] = len(preorder)
                preorder.append(w)
                parent[w] = (v, e)
                stack.append((w, e, iter(g.adj[w])))
                break
        else:
            stack.pop()
    tree_edges = {p[1] for p in parent.values() if p is not None}
    # back edges grouped by their upper end, in adjacency order of the lower end
    back = {v: [] for v in g.vertices}
    for e, (a, b) in g.edges.items():
        if e in tree_edges:
            continue
        up, down = (a, b) if order[a] < order[b] else (b, a)
        back[up].append((order[down], g.eindex[e], down, e))
    if first is not None:
        closing = first.edges[-1]
        back[root].sort(key=lambda t: (t[3] != closing, t[0], t[1]))
    for v in back:
        if v != root or first is None:
            back[v].sort()
    visited = set()
    chains = []
    for u in preorder:
        for _, _, down, e in back[u]:
            visited.add(u)
            vs, es = [u, down], [e]
            x = down
            while x not in visited:
                visited.add(x)
                px, pe = parent[x]
                vs.append(px)
                es.append(pe)
                x = px
            if not chains:
                chains.append(CircuitSeq(tuple(vs[:-1]), tuple(es)))
            else:
                chains.append(PathSeq(tuple(vs), tuple(es)))
    return chains


def ear_decomposition(g: Graph, first_circuit: CircuitSeq | None = None) -> EarDecomposition:
    """An ear-decomposition of a 2-connected graph, optionally starting at a given circuit."""
    if not is_two_connected(g):
        raise PreconditionError("ear_decomposition needs a 2-connected graph")
    if first_circuit is not None:
        msg = check_circuit(g, first_circuit)
        if msg:
            raise PreconditionError(f"starting circuit is invalid: {msg}")
    ears = _chain_decomposition(g, first_circuit)
    if first_circuit is not None and set(ears[0].edges) == set(first_circuit.edges):
        ears[0] = first_circuit
    return EarDecomposition(g, tuple(ears))


def _find_ear(g: Graph, cov_v: set, cov_e: set) -> PathSeq | None:
    for e, (a, b) in g.edges.items():
        if e in cov_e:
            continue
        if a in cov_v and b in cov_v:
            return PathSeq((a, b), (e,))
        if a in cov_v or b in cov_v:
            start, x = (a, b) if a in cov_v else (b, a)
            # search from x through uncovered vertices to a covered vertex other than start
            prev = {x: (start, e)}
            queue = deque([x])
            while queue:
                y = queue.popleft()
                for z, f in g.adj[y]:
                    if f in cov_e or z == start and f == e:
                        continue
                    if z in cov_v:
                        if z == start:
                            continue
                        vs, es = [z, y], [f]
                        while vs[-1] != start:
                            py, pf = prev[vs[-1]]
                            es.append(pf)
                            vs.append(py)
                        return PathSeq(tuple(vs[::-1]), tuple(es[::-1]))
                    if z not in prev:
                        prev[z] = (y, f)
                        queue.append(z)
    return None


def complete_from(g: Graph, partial: EarDecomposition) -> EarDecomposition:
    """Extend an ear-decomposition of a 2-connected subgraph of ``g`` to all of ``g``."""
    if not is_two_connected(g):
        raise PreconditionError("complete_from needs a 2-connected graph")
    msg = _prefix_problem(g, partial.ears)
    if msg:
        raise PreconditionError(f"invalid partial decomposition: {msg}")
    if len(partial.ears) == 1:
        return ear_decomposition(g, partial.ears[0])
    ears = list(partial.ears)
    cov_v = partial.covered_vertices()
    cov_e = partial.covered_edges()
    while len(cov_e) < g.m:
        ear = _find_ear(g, cov_v, cov_e)
        if ear is None:
            raise PreconditionError("partial decomposition cannot be extended")
        ears.append(ear)
        cov_v.update(ear.vertices)
        cov_e.update(ear.edges)
    return EarDecomposition(g, tuple(ears))


# -- matchings ---------------------------------------------------------------


def _simple_adjacency(g: Graph):
    idx = g.vindex
    nbrs = [[] for _ in range(g.n)]
    pair_edge = {}
    for e, (a, b) in g.edges.items():
        i, j = idx[a], idx[b]
        key = (min(i, j), max(i, j))
        if key not in pair_edge:
            pair_edge[key] = e
            nbrs[i].append(j)
            nbrs[j].append(i)
    return nbrs, pair_edge


def _max_matching(n: int, nbrs) -> list:
    """Edmonds' blossom algorithm; returns the mate array (-1 = unmatched)."""
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for w in nbrs[v]:
                if match[w] == -1:
                    match[v], match[w] = w, v
                    break

    def find_path(root):
        used = [False] * n
        p = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])

        def lca(a, b):
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = p[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = p[match[b]]

        def mark(v, b, child, blossom):
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                p[v] = child
                child = match[v]
                v = p[match[v]]

        while queue:
            v = queue.popleft()
            for to in nbrs[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark(v, cur, to, blossom)
                    mark(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        return to, p
                    used[match[to]] = True
                    queue.append(match[to])
        return -1, p

    for root in range(n):
        if match[root] != -1:
            continue
        end, p = find_path(root)
        v = end
        while v != -1:
            pv = p[v]
            nxt = match[pv]
            match[v] = pv
            match[pv] = v
            v = nxt
    return match


def has_perfect_matching(g: Graph):
    """``(True, sorted edge ids of a perfect matching)`` or ``(False, None)``."""
    if g.n % 2:
        return False, None
    nbrs, pair_edge = _simple_adjacency(g)
    match = _max_matching(g.n, nbrs)
    if any(m == -1 for m in match):
        return False, None
    chosen = [pair_edge[(i, match[i])] for i in range(g.n) if i < match[i]]
    return True, sorted(chosen, key=g.eindex.get)


def has_perfect_matching_brute(g: Graph, max_vertices: int = 20) -> bool:
    """Exponential reference: repeatedly match the lowest unmatched vertex."""
    if g.n > max_vertices:
        raise ScaleBoundExceeded("has_perfect_matching_brute", g.n, max_vertices)
    if g.n % 2:
        return False
    nbr_mask = [0] * g.n
    for a, b in g.edges.values():
        i, j = g.vindex[a], g.vindex[b]
        nbr_mask[i] |= 1 << j
        nbr_mask[j] |= 1 << i
    full = (1 << g.n) - 1
    memo = {}

    def solve(free):
        if free == 0:
            return True
        if free in memo:
            return memo[free]
        low = (free & -free).bit_length() - 1
        rest = free & ~(1 << low)
        cand = nbr_mask[low] & rest
        ok = False
        while cand and not ok:
            bit = cand & -cand
            ok = solve(rest & ~bit)
            cand ^= bit
        memo[free] = ok
        return ok

    return solve(full)


def is_factor_critical(g: Graph) -> bool:
    """True iff G - v has a perfect matching for every vertex v."""
    if g.n % 2 == 0:
        return g.n == 0
    for v in g.vertices:
        ok, _ = has_perfect_matching(g.remove_vertices([v]))
        if not ok:
            return False
    return True
