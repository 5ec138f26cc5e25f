"""Ear-parity parameters: brute-force beta, exact max-odd-ears search, H_k witnesses.

beta(G) is the largest cyclomatic number of a 2-connected factor-critical
subgraph; phibar(G) is the largest number of odd ears over all
ear-decompositions of a 2-connected G, and phi = cyclomatic number - phibar.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError, ScaleBoundExceeded
from .graph import CircuitSeq, Graph, PathSeq, gen_hk, is_bipartite, is_two_connected
from .ears import EarDecomposition, is_factor_critical, odd_ear_count, validate
from .oddc3 import decide_oddc3_free, FreeCert

__all__ = [
    "BetaResult",
    "beta_brute",
    "beta_le_1",
    "max_odd_ears",
    "phi",
    "optimal_through_edge",
    "optimal_first_ear_odd",
    "hk_witness",
    "enum_graph_circuits",
]


@dataclass(frozen=True)
class BetaResult:
    value: int
    witness: EarDecomposition | None = None


class _EarSearch:
    """Exhaustive search over ear-decompositions, memoised on the covered edge set."""

    def __init__(self, g: Graph, all_odd: bool = False):
        self.g = g
        self.full = (1 << g.m) - 1
        self.order = list(g.edges)
        self.all_odd = all_odd
        self.memo = {}

    def vertices_of(self, mask):
        vs = set()
        b = mask
        while b:
            low = b & -b
            vs.update(self.g.edges[self.order[low.bit_length() - 1]])
            b ^= low
        return vs

    def ears(self, mask):
        """Every ear attachable to the subgraph covered by ``mask``, best candidates first."""
        g = self.g
        cov = self.vertices_of(mask)
        found = {}
        for s in sorted(cov, key=g.vindex.get):
            stack = [(s, (s,), (), 0)]
            while stack:
                x, vs, es, em = stack.pop()
                for y, e in g.adj[x]:
                    bit = 1 << g.eindex[e]
                    if mask & bit or em & bit:
                        continue
                    if y in cov:
                        if y != s and y not in vs and g.vindex[s] < g.vindex[y]:
                            found.setdefault(em | bit, PathSeq(vs + (y,), es + (e,)))
                        continue
                    if y in vs:
                        continue
                    stack.append((y, vs + (y,), es + (e,), em | bit))
        cands = list(found.items())
        cands.sort(key=lambda t: (1 - t[1].length % 2, t[1].length,
                                  g.vindex[t[1].start], [g.eindex[e] for e in t[1].edges]))
        return cands

    def best(self, mask, remaining):
        """(max odd ears to finish, first ear) from ``mask``; None if impossible (all_odd mode)."""
        if mask == self.full:
            return 0, None
        hit = self.memo.get(mask)
        if hit is not None:
            return hit
        result = None
        for emask, ear in self.ears(mask):
            odd = ear.length % 2
            if self.all_odd and not odd:
                continue
            sub = self.best(mask | emask, remaining - 1)
            if sub is None:
                continue
            val = sub[0] + odd
            if result is None or val > result[0]:
                result = (val, ear)
                if val == remaining:
                    break
        if result is None and not self.all_odd:
            raise AssertionError("no ear attaches to a proper 2-connected subgraph")
        self.memo[mask] = result
        return result

    def unwind(self, mask):
        ears = []
        while mask != self.full:
            _, ear = self.memo[mask]
            ears.append(ear)
            mask |= self.g.edge_mask(ear.edges)
        return ears


def enum_graph_circuits(g: Graph, through=None) -> list[CircuitSeq]:
    """Circuits by depth-first search from each circuit's smallest vertex."""
    out = {}
    idx = g.vindex
    for s in g.vertices:
        stack = [(s, (s,), ())]
        while stack:
            x, vs, es = stack.pop()
            for y, e in g.adj[x]:
                if es and e == es[-1]:
                    continue
                if y == s and es:
                    if len(es) == 1 and e == es[0]:
                        continue
                    key = frozenset(es + (e,))
                    if key not in out:
                        out[key] = CircuitSeq(vs, es + (e,))
                    continue
                if idx[y] <= idx[s] or y in vs:
                    continue
                stack.append((y, vs + (y,), es + (e,)))
    circuits = [c for c in out.values() if through is None or through in c.edges]
    circuits.sort(key=lambda c: (1 - c.length % 2, c.length, [g.eindex[e] for e in c.edges]))
    return circuits


def _check_bound(g: Graph, max_edges: int, what: str):
    if g.m > max_edges:
        raise ScaleBoundExceeded(what, g.m, max_edges)


def _search(g: Graph, first_edge=None, all_odd=False):
    """Best decomposition over all first circuits (optionally through ``first_edge``)."""
    s = _EarSearch(g, all_odd)
    total = g.cyclomatic_number()
    best = None
    for c in enum_graph_circuits(g, through=first_edge):
        if all_odd and not c.odd:
            continue
        mask = g.edge_mask(c.edges)
        sub = s.best(mask, total - 1)
        if sub is None:
            continue
        val = sub[0] + c.length % 2
        if best is None or val > best[0]:
            best = (val, c, mask)
            if val == total:
                break
    if best is None:
        return None
    val, c, mask = best
    ears = [c] + s.unwind(mask)
    return val, EarDecomposition(g, tuple(ears))


def max_odd_ears(g: Graph, max_edges: int = 13) -> tuple[int, EarDecomposition]:
    """Exact phibar with a decomposition attaining it."""
    if not is_two_connected(g):
        raise PreconditionError("max_odd_ears needs a 2-connected graph")
    _check_bound(g, max_edges, "max_odd_ears")
    return _search(g)


def phi(g: Graph, max_edges: int = 13) -> int:
    val, _ = max_odd_ears(g, max_edges)
    return g.cyclomatic_number() - val


def optimal_through_edge(g: Graph, e, max_edges: int = 13) -> EarDecomposition:
    """An optimal ear-decomposition whose first ear contains ``e``."""
    if not is_two_connected(g):
        raise PreconditionError("optimal_through_edge needs a 2-connected graph")
    if e not in g.edges:
        raise PreconditionError(f"unknown edge {e!r}")
    _check_bound(g, max_edges, "optimal_through_edge")
    val, d = _search(g, first_edge=e)
    return d


def optimal_first_ear_odd(g: Graph, d: EarDecomposition, max_edges: int = 13) -> EarDecomposition:
    """Turn an optimal decomposition into an optimal one starting with an odd circuit.

    Find the first prefix that is not bipartite, re-decompose it optimally
    with the first ear through an edge of its last ear, and keep the tail.
    """
    if is_bipartite(g)[0]:
        raise PreconditionError("optimal_first_ear_odd needs a non-bipartite graph")
    ok, msg = validate(d, g)
    if not ok:
        raise PreconditionError(f"invalid decomposition: {msg}")
    best, _ = max_odd_ears(g, max_edges)
    if odd_ear_count(d) != best:
        raise PreconditionError("decomposition is not optimal")
    if d.ears[0].odd:
        return d
    covered = []
    for i, ear in enumerate(d.ears):
        covered.extend(ear.edges)
        h = g.edge_subgraph(covered)
        if not is_bipartite(h)[0]:
            break
    head = optimal_through_edge(h, d.ears[i].edges[0], max_edges)
    out = EarDecomposition(g, head.ears + d.ears[i + 1:])
    assert odd_ear_count(out) == best and out.ears[0].odd
    return out


def beta_brute(g: Graph, max_edges: int = 16) -> BetaResult:
    """Exact beta by enumerating edge subsets."""
    _check_bound(g, max_edges, "beta_brute")
    order = list(g.edges)
    ends = [(g.vindex[g.edges[e][0]], g.vindex[g.edges[e][1]]) for e in order]
    inc = [0] * g.n
    for i, (a, b) in enumerate(ends):
        inc[a] |= 1 << i
        inc[b] |= 1 << i
    best_val, best_mask = 0, 0
    for mask in range(1, 1 << g.m):
        ne = mask.bit_count()
        if ne < 3:
            continue
        vmask = 0
        b = mask
        while b:
            low = b & -b
            a, c = ends[low.bit_length() - 1]
            vmask |= 1 << a | 1 << c
            b ^= low
        nv = vmask.bit_count()
        if nv % 2 == 0 or ne - nv + 1 <= best_val:
            continue
        good = True
        vb = vmask
        while vb:
            low = vb & -vb
            if (mask & inc[low.bit_length() - 1]).bit_count() < 2:
                good = False
                break
            vb ^= low
        if not good:
            continue
        h = g.edge_subgraph([order[i] for i in range(g.m) if mask >> i & 1])
        if is_two_connected(h) and is_factor_critical(h):
            best_val, best_mask = ne - nv + 1, mask
    if best_val == 0:
        return BetaResult(0, None)
    h = g.edge_subgraph([order[i] for i in range(g.m) if best_mask >> i & 1])
    res = _search(h, all_odd=True)
    if res is None or res[0] != best_val:
        raise AssertionError("factor-critical subgraph without an odd ear-decomposition")
    return BetaResult(best_val, res[1])


def beta_le_1(g: Graph):
    """``(True, FreeCert)`` when beta <= 1, else ``(False, OddC3Cert)``."""
    res = decide_oddc3_free(g)
    return isinstance(res, FreeCert), res


def hk_witness(k: int) -> EarDecomposition:
    """A decomposition of H_k with 2k ears of which k + 1 are odd.

    Ear 0 is the triangle u-v-a3 of the first copy, then that copy's
    3-edge path u-a5-a4-a3; every further copy adds the 2-edge path
    v-a3-u followed by its 3-edge path.
    """
    if k < 2:
        raise PreconditionError("hk_witness needs k >= 2")
    g = gen_hk(k)
    u, v = 0, 1
    ears = []
    for i in range(k):
        a3, a4, a5 = 2 + 3 * i, 3 + 3 * i, 4 + 3 * i
        e_va3, e_a3u, e_ua5, e_a5a4, e_a4a3 = (1 + 5 * i + t for t in range(5))
        if i == 0:
            ears.append(CircuitSeq((u, v, a3), (0, e_va3, e_a3u)))
        else:
            ears.append(PathSeq((v, a3, u), (e_va3, e_a3u)))
        ears.append(PathSeq((u, a5, a4, a3), (e_ua5, e_a5a4, e_a4a3)))
    return EarDecomposition(g, tuple(ears))
