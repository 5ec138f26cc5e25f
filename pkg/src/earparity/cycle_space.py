"""GF(2) cycle-space tools: fundamental and odd circuit bases, intersection parities.

Vectors are Python ints used as bitsets, bit ``i`` standing for the edge
(or matroid element) with dense index ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .graph import CircuitSeq, Graph, is_bipartite, is_two_connected
from .ears import ear_decomposition
from .paths import bfs_path_adj, flex_parity_path_adj

__all__ = [
    "Gf2Vec",
    "CircuitBasis",
    "circuit_vector",
    "intersection_parity",
    "gf2_rank",
    "XorBasis",
    "fundamental_basis",
    "iter_odd_circuit_basis",
    "odd_circuit_basis",
    "first_even_pair",
    "is_totally_odd",
]


@dataclass(frozen=True)
class Gf2Vec:
    bits: int
    dim: int

    def __post_init__(self):
        if self.bits >> self.dim:
            raise ValueError("vector has bits beyond its dimension")

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    @property
    def parity(self) -> int:
        return self.bits.bit_count() & 1

    def __xor__(self, other: "Gf2Vec") -> "Gf2Vec":
        if self.dim != other.dim:
            raise PreconditionError("dimension mismatch")
        return Gf2Vec(self.bits ^ other.bits, self.dim)

    def support(self) -> list[int]:
        out = []
        b = self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out


def circuit_vector(g: Graph, circuit) -> Gf2Vec:
    return Gf2Vec(g.edge_mask(circuit.edges), g.m)


def intersection_parity(a: Gf2Vec, b: Gf2Vec) -> str:
    if a.dim != b.dim:
        raise PreconditionError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return "odd" if (a.bits & b.bits).bit_count() & 1 else "even"


class XorBasis:
    """Incremental GF(2) row reduction keyed by leading bit."""

    def __init__(self):
        self.rows = {}

    def reduce(self, bits: int) -> int:
        while bits:
            top = bits.bit_length() - 1
            row = self.rows.get(top)
            if row is None:
                return bits
            bits ^= row
        return 0

    def add(self, bits: int) -> bool:
        """Insert; False if ``bits`` was already in the span."""
        r = self.reduce(bits)
        if not r:
            return False
        self.rows[r.bit_length() - 1] = r
        return True

    def __len__(self):
        return len(self.rows)


def gf2_rank(vectors) -> int:
    xb = XorBasis()
    for v in vectors:
        xb.add(v.bits if isinstance(v, Gf2Vec) else v)
    return len(xb)


@dataclass(frozen=True)
class CircuitBasis:
    host: object
    circuits: tuple
    vectors: tuple

    def __len__(self):
        return len(self.circuits)


def fundamental_basis(g: Graph, tree) -> CircuitBasis:
    """One fundamental circuit per non-tree edge, in edge-id order."""
    tree = set(tree)
    for e in tree:
        if e not in g.edges:
            raise PreconditionError(f"tree edge {e!r} not in graph")
    if not g.is_connected():
        raise PreconditionError("fundamental_basis needs a connected graph")
    if len(tree) != g.n - 1:
        raise PreconditionError("edge set is not a spanning tree (wrong size)")
    root = g.vertices[0]
    parent = {root: None}
    depth = {root: 0}
    stack = [root]
    while stack:
        x = stack.pop()
        for y, e in g.adj[x]:
            if e in tree and y not in depth:
                parent[y] = (x, e)
                depth[y] = depth[x] + 1
                stack.append(y)
    if len(depth) != g.n:
        raise PreconditionError("edge set is not a spanning tree (not spanning)")
    circuits, vectors = [], []
    for e, (a, b) in g.edges.items():
        if e in tree:
            continue
        left_v, left_e = [a], []
        right_v, right_e = [b], []
        x, y = a, b
        while depth[x] > depth[y]:
            px, pe = parent[x]
            left_v.append(px)
            left_e.append(pe)
            x = px
        while depth[y] > depth[x]:
            py, pe = parent[y]
            right_v.append(py)
            right_e.append(pe)
            y = py
        while x != y:
            px, pe = parent[x]
            left_v.append(px)
            left_e.append(pe)
            x = px
            py, pf = parent[y]
            right_v.append(py)
            right_e.append(pf)
            y = py
        # a ... lca ... b then back along e
        vs = left_v + right_v[-2::-1]
        es = left_e + right_e[::-1] + [e]
        c = CircuitSeq(tuple(vs), tuple(es))
        circuits.append(c)
        vectors.append(circuit_vector(g, c))
    return CircuitBasis(g, tuple(circuits), tuple(vectors))


def _ear_circuit(ear, closing):
    """Circuit formed by an a-b ear and an a-b path in the earlier subgraph."""
    vs = ear.vertices + closing.vertices[-2:0:-1]
    es = ear.edges + closing.edges[::-1]
    return CircuitSeq(tuple(vs), tuple(es))


def iter_odd_circuit_basis(g: Graph):
    """Yield the members of an odd circuit basis one by one.

    Start from an odd circuit C, take an ear-decomposition beginning with
    C, and close each ear P by a path Q in the earlier subgraph chosen so
    that P + Q is odd.  Every new circuit contains the new edges of its ear,
    so the members are independent.
    """
    if not is_two_connected(g):
        raise PreconditionError("odd_circuit_basis needs a 2-connected graph")
    bip, c = is_bipartite(g)
    if bip:
        raise PreconditionError("odd_circuit_basis needs a non-bipartite graph")
    decomp = ear_decomposition(g, c)
    yield decomp.ears[0]
    adj = {v: [] for v in g.vertices}
    for k, e in enumerate(c.edges):
        a, b = c.vertices[k], c.vertices[(k + 1) % len(c.vertices)]
        adj[a].append((b, e))
        adj[b].append((a, e))
    for ear in decomp.ears[1:]:
        want = (ear.length + 1) % 2
        q = bfs_path_adj(adj, ear.start, ear.end)
        if q.length % 2 != want:
            q = flex_parity_path_adj(adj, ear.start, ear.end, want, c)
        yield _ear_circuit(ear, q)
        for k, e in enumerate(ear.edges):
            a, b = ear.vertices[k], ear.vertices[k + 1]
            adj[a].append((b, e))
            adj[b].append((a, e))


def odd_circuit_basis(g: Graph) -> CircuitBasis:
    circuits = tuple(iter_odd_circuit_basis(g))
    return CircuitBasis(g, circuits, tuple(circuit_vector(g, c) for c in circuits))


def first_even_pair(vectors) -> tuple[int, int] | None:
    """First pair (i, j), i < j, with even intersection, scanning j then i."""
    for j in range(1, len(vectors)):
        bj = vectors[j].bits
        for i in range(j):
            if not (vectors[i].bits & bj).bit_count() & 1:
                return i, j
    return None


def is_totally_odd(basis: CircuitBasis):
    """``(True, None)`` or ``(False, (i, j))`` naming the first evenly meeting pair."""
    for i, v in enumerate(basis.vectors):
        if not v.parity:
            raise PreconditionError(f"basis member {i} is even")
    pair = first_even_pair(basis.vectors)
    return (pair is None), pair
