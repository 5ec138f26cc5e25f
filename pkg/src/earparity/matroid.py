"""Binary matroids: construction, blocks, bipartiteness, odd circuits and odd-C3+.

A matroid is stored as one GF(2) column per element, each column an int
bitmask over the rows.  Circuits are frozensets of element ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .errors import ParseError, PreconditionError, ScaleBoundExceeded
from .graph import Graph, id_key

__all__ = [
    "BinaryMatroid",
    "MatroidOddC3Cert",
    "FreeMatroidCert",
    "from_graph",
    "from_oracle",
    "fano",
    "direct_sum",
    "fundamental_circuits",
    "matroid_blocks",
    "is_bipartite_matroid",
    "circuit_through",
    "odd_circuit_through",
    "iter_odd_circuit_basis_matroid",
    "odd_circuit_basis_matroid",
    "restricted_circuits",
    "is_circuit",
    "extract_oddc3_matroid",
    "matroid_oddc3_problem",
    "decide_oddc3_free_matroid",
    "is_oddc3_matroid",
    "parse_matroid",
    "format_matroid",
]


class BinaryMatroid:
    """Loopless binary matroid given by GF(2) columns."""

    __slots__ = ("name", "elements", "columns", "nrows", "index", "_rank")

    def __init__(self, elements, columns, nrows: int, name: str = "M"):
        elements = tuple(elements)
        columns = tuple(columns)
        if len(elements) != len(columns):
            raise PreconditionError("one column per element required")
        if len(set(elements)) != len(elements):
            raise PreconditionError("duplicate element id")
        for e, col in zip(elements, columns):
            if col == 0:
                raise PreconditionError(f"element {e!r} is a loop (zero column)")
            if col >> nrows:
                raise PreconditionError(f"column of {e!r} exceeds the row count")
        self.name = name
        self.elements = elements
        self.columns = columns
        self.nrows = nrows
        self.index = {e: i for i, e in enumerate(elements)}
        self._rank = None

    def __repr__(self):
        return f"BinaryMatroid({self.name!r}, n={len(self.elements)}, rank={self.rank})"

    def __len__(self):
        return len(self.elements)

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = _rank(self.columns)
        return self._rank

    def rank_of(self, subset) -> int:
        return _rank(self.columns[self.index[e]] for e in subset)

    def is_independent(self, subset) -> bool:
        subset = list(subset)
        return len(set(subset)) == len(subset) and self.rank_of(subset) == len(subset)

    def restrict(self, subset) -> "BinaryMatroid":
        keep = sorted(set(subset), key=self.index.get)
        return BinaryMatroid(keep, [self.columns[self.index[e]] for e in keep], self.nrows,
                             self.name)

    def mask(self, subset) -> int:
        out = 0
        for e in subset:
            out |= 1 << self.index[e]
        return out

    def unmask(self, mask: int) -> frozenset:
        return frozenset(self.elements[i] for i in range(len(self.elements)) if mask >> i & 1)


def _rank(columns) -> int:
    rows = {}
    for col in columns:
        while col:
            top = col.bit_length() - 1
            if top not in rows:
                rows[top] = col
                break
            col ^= rows[top]
    return len(rows)


def from_graph(g: Graph) -> BinaryMatroid:
    """Vertex-edge incidence matrix over GF(2), one row per vertex."""
    cols = [(1 << g.vindex[a]) | (1 << g.vindex[b]) for a, b in g.edges.values()]
    return BinaryMatroid(list(g.edges), cols, g.n, f"M({g.name})")


def fano() -> BinaryMatroid:
    """The Fano plane: the seven non-zero vectors of GF(2)^3."""
    return BinaryMatroid(list(range(1, 8)), list(range(1, 8)), 3, "F7")


def direct_sum(m1: BinaryMatroid, m2: BinaryMatroid) -> BinaryMatroid:
    els = [("a", e) for e in m1.elements] + [("b", e) for e in m2.elements]
    cols = list(m1.columns) + [c << m1.nrows for c in m2.columns]
    return BinaryMatroid(els, cols, m1.nrows + m2.nrows, f"{m1.name}+{m2.name}")


class _CountingOracle:
    def __init__(self, oracle, budget):
        self.oracle = oracle
        self.calls = 0
        self.budget = budget

    def __call__(self, subset) -> bool:
        self.calls += 1
        if self.calls > self.budget:
            raise AssertionError("independence oracle budget exceeded")
        return bool(self.oracle(frozenset(subset)))


def from_oracle(oracle, elements, name: str = "M", stats: dict | None = None) -> BinaryMatroid:
    """Build a representation from an independence oracle.

    A greedy basis B is extracted, then each non-basis element x gets the
    column of its fundamental circuit in B.  Uses at most |S| (rank + 1)
    oracle calls; the spare calls spot-check that symmetric differences of
    fundamental circuits are dependent, as they must be in a binary matroid.
    """
    elements = list(elements)
    n = len(elements)
    ask = _CountingOracle(oracle, n * (n + 1))
    basis = []
    for e in elements:
        if ask(basis + [e]):
            basis.append(e)
    r = len(basis)
    ask.budget = n * (r + 1)
    row_of = {b: i for i, b in enumerate(basis)}
    fund = {}
    for x in elements:
        if x in row_of:
            continue
        circ = {x}
        for b in basis:
            if ask([y for y in basis if y != b] + [x]):
                circ.add(b)
        if len(circ) == 1:
            raise PreconditionError(f"element {x!r} is a loop")
        fund[x] = frozenset(circ)
    spare = ask.budget - ask.calls
    for x, y in combinations(list(fund), 2):
        if spare <= 0:
            break
        diff = fund[x] ^ fund[y]
        spare -= 1
        if ask(diff):
            raise PreconditionError(
                f"oracle is not binary: fundamental circuits of {x!r} and {y!r} "
                "have an independent symmetric difference")
    cols = []
    for e in elements:
        if e in row_of:
            cols.append(1 << row_of[e])
        else:
            col = 0
            for b in fund[e] - {e}:
                col |= 1 << row_of[b]
            cols.append(col)
    m = BinaryMatroid(elements, cols, max(r, 1), name)
    m._rank = r
    if stats is not None:
        stats["calls"] = ask.calls
        stats["budget"] = ask.budget
    return m


# -- fundamental circuits and blocks -----------------------------------------


def _fundamentals(m: BinaryMatroid, order=None):
    """Greedy basis (in ``order``) and fundamental circuit bitmask of every other element."""
    order = list(range(len(m.elements))) if order is None else order
    rows = {}  # leading row bit -> (column, element combination)
    basis = []
    fund = {}
    for i in order:
        col, combo = m.columns[i], 0
        while col:
            top = col.bit_length() - 1
            if top not in rows:
                break
            rcol, rcombo = rows[top]
            col ^= rcol
            combo ^= rcombo
        if col:
            rows[col.bit_length() - 1] = (col, combo | 1 << i)
            basis.append(i)
        else:
            fund[i] = combo | 1 << i
    return basis, fund


def fundamental_circuits(m: BinaryMatroid) -> list[frozenset]:
    _, fund = _fundamentals(m)
    return [m.unmask(f) for _, f in sorted(fund.items())]


def _block_labels(m: BinaryMatroid):
    n = len(m.elements)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    _, fund = _fundamentals(m)
    for x, f in fund.items():
        b = f
        while b:
            low = b & -b
            parent[find(low.bit_length() - 1)] = find(x)
            b ^= low
    return [find(i) for i in range(n)]


def matroid_blocks(m: BinaryMatroid) -> list[frozenset]:
    """Classes of the relation 'equal or on a common circuit'."""
    labels = _block_labels(m)
    groups = {}
    for i, lab in enumerate(labels):
        groups.setdefault(lab, []).append(i)
    out = [frozenset(m.elements[i] for i in idx) for idx in groups.values()]
    out.sort(key=lambda b: min(m.index[e] for e in b))
    return out


def _is_connected(m: BinaryMatroid) -> bool:
    return len(m.elements) >= 2 and len(set(_block_labels(m))) == 1


@dataclass(frozen=True)
class BipartiteResult:
    bipartite: bool
    even_basis: tuple = ()
    odd_circuit: frozenset | None = None


def is_bipartite_matroid(m: BinaryMatroid) -> BipartiteResult:
    """Bipartite iff every fundamental circuit is even (parity of a sum is the sum of parities)."""
    circuits = fundamental_circuits(m)
    for c in circuits:
        if len(c) % 2:
            return BipartiteResult(False, odd_circuit=c)
    return BipartiteResult(True, even_basis=tuple(circuits))


# -- circuits through given elements -----------------------------------------


def _circuit_through_idx(m: BinaryMatroid, a: int, b: int) -> int | None:
    """Bitmask of a circuit containing elements a and b (indices), or None.

    With a placed first and b last in the greedy order, a is in the basis
    and b outside it (unless b is a coloop).  A shortest a-b path in the
    fundamental-circuit bipartite graph is induced, and the sum of the
    fundamental circuits of its non-basis vertices is then a circuit.
    """
    n = len(m.elements)
    if a == b:
        raise PreconditionError("need two distinct elements")
    order = [a] + [i for i in range(n) if i != a and i != b] + [b]
    basis, fund = _fundamentals(m, order)
    if b not in fund or a not in basis:
        return None
    if fund[b] >> a & 1:
        return fund[b]
    # bipartite graph: basis element y -- non-basis x whenever y in C(x)
    members = {x: [y for y in range(n) if f >> y & 1 and y != x] for x, f in fund.items()}
    near = {y: [] for y in basis}
    for x in sorted(members):
        for y in members[x]:
            near[y].append(x)
    prev = {a: None}
    queue = deque([a])
    while queue:
        y = queue.popleft()
        if y in near:
            nxt = near[y]
        else:
            nxt = members[y]
        for z in nxt:
            if z in prev:
                continue
            prev[z] = y
            if z == b:
                queue.clear()
                break
            queue.append(z)
    if b not in prev:
        return None
    total = 0
    z = b
    while z is not None:
        if z in fund:
            total ^= fund[z]
        z = prev[z]
    return total


def circuit_through(m: BinaryMatroid, a, b, within=None) -> frozenset | None:
    """A circuit containing both ``a`` and ``b``, optionally inside ``within``."""
    sub = m if within is None else m.restrict(within)
    if a not in sub.index or b not in sub.index:
        return None
    res = _circuit_through_idx(sub, sub.index[a], sub.index[b])
    return None if res is None else sub.unmask(res)


def _with_parity_element(m: BinaryMatroid):
    """M_p: an all-ones row appended, plus an element p whose column is that row alone."""
    top = 1 << m.nrows
    cols = [c | top for c in m.columns] + [top]
    p = ("p",)
    while p in m.index:
        p = p + ("p",)
    return BinaryMatroid(list(m.elements) + [p], cols, m.nrows + 1, m.name + "_p"), p


def _odd_circuit_through_unchecked(m: BinaryMatroid, e, within=None) -> frozenset | None:
    sub = m if within is None else m.restrict(within)
    mp, p = _with_parity_element(sub)
    res = _circuit_through_idx(mp, mp.index[p], mp.index[e])
    if res is None:
        return None
    return mp.unmask(res) - {p}


def odd_circuit_through(m: BinaryMatroid, e) -> frozenset:
    """An odd circuit containing ``e``; circuits of M_p through p are odd circuits of M plus p."""
    if e not in m.index:
        raise PreconditionError(f"unknown element {e!r}")
    if not _is_connected(m):
        raise PreconditionError("odd_circuit_through needs a connected matroid")
    if is_bipartite_matroid(m).bipartite:
        raise PreconditionError("odd_circuit_through needs a non-bipartite matroid")
    res = _odd_circuit_through_unchecked(m, e)
    if res is None:
        raise AssertionError("connected non-bipartite matroid without odd circuit through element")
    return res


def iter_odd_circuit_basis_matroid(m: BinaryMatroid):
    """Yield |S| - rank independent odd circuits.

    Odd fundamental circuits of a greedy basis B come first.  Each further
    circuit is an odd circuit through a new non-basis element x inside
    B + (elements already used) + x, found in M_p.  Every circuit owns an
    element absent from all earlier ones, so the family is independent.
    """
    if not _is_connected(m):
        raise PreconditionError("odd circuit basis needs a connected matroid")
    basis, fund = _fundamentals(m)
    if all(f.bit_count() % 2 == 0 for f in fund.values()):
        raise PreconditionError("odd circuit basis needs a non-bipartite matroid")
    allowed = set(m.elements[i] for i in basis)
    pending = []
    for x in sorted(fund):
        if fund[x].bit_count() % 2:
            allowed.add(m.elements[x])
            yield m.unmask(fund[x])
        else:
            pending.append(m.elements[x])
    while pending:
        for k, x in enumerate(pending):
            circ = _odd_circuit_through_unchecked(m, x, within=allowed | {x})
            if circ is not None:
                allowed.add(x)
                del pending[k]
                yield circ
                break
        else:
            raise AssertionError("no pending element lies on a new odd circuit")


def odd_circuit_basis_matroid(m: BinaryMatroid) -> list[frozenset]:
    out = list(iter_odd_circuit_basis_matroid(m))
    vec = [m.mask(c) for c in out]
    if _rank(vec) != len(out) or len(out) != len(m.elements) - m.rank:
        raise AssertionError("odd circuit family is not a basis of the cycle space")
    return out


# -- odd-C3+ in binary matroids ----------------------------------------------


def _nullspace(columns, nrows, n):
    rows = []
    for r in range(nrows):
        mask = 0
        for j, col in enumerate(columns):
            if col >> r & 1:
                mask |= 1 << j
        rows.append(mask)
    pivots = {}
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
    out = []
    for free in range(n):
        if free in pivots:
            continue
        vec = 1 << free
        for col, prow in pivots.items():
            if prow >> free & 1:
                vec |= 1 << col
        out.append(vec)
    return out


def restricted_circuits(m: BinaryMatroid, subset, max_dim: int = 20) -> list[frozenset]:
    """All circuits inside ``subset`` by enumerating the restriction's cycle space."""
    sub = m.restrict(subset)
    basis = _nullspace(sub.columns, sub.nrows, len(sub.elements))
    if len(basis) > max_dim:
        raise ScaleBoundExceeded("restricted circuit enumeration", len(basis), max_dim)
    cycles = []
    cur = 0
    for i in range(1, 1 << len(basis)):
        cur ^= basis[(i & -i).bit_length() - 1]
        cycles.append(cur)
    out = []
    for s in cycles:
        if _rank(sub.columns[j] for j in range(len(sub.elements)) if s >> j & 1) == s.bit_count() - 1:
            out.append(sub.unmask(s))
    out.sort(key=lambda c: sorted(m.index[e] for e in c))
    return out


def is_circuit(m: BinaryMatroid, subset) -> bool:
    subset = set(subset)
    if not subset or not all(e in m.index for e in subset):
        return False
    if m.rank_of(subset) != len(subset) - 1:
        return False
    return all(m.rank_of(subset - {e}) == len(subset) - 1 for e in subset)


@dataclass(frozen=True)
class MatroidOddC3Cert:
    c1: frozenset
    c2: frozenset


def matroid_oddc3_problem(m: BinaryMatroid, cert: MatroidOddC3Cert) -> str | None:
    c1, c2 = set(cert.c1), set(cert.c2)
    if not is_circuit(m, c1) or not is_circuit(m, c2):
        return "c1 or c2 is not a circuit"
    if len(c1) % 2 == 0:
        return "c1 is not odd"
    if len(c2 - c1) % 2 == 0:
        return "|c2 - c1| is not odd"
    found = {frozenset(c) for c in restricted_circuits(m, c1 | c2)}
    want = {frozenset(c1), frozenset(c2), frozenset(c1 ^ c2)}
    if found != want:
        return f"restriction has {len(found)} circuits, expected exactly c1, c2 and c1 + c2"
    return None


def _valid_pair(x: frozenset, y: frozenset) -> bool:
    return len(x) % 2 == 1 and len(y - x) % 2 == 1 and bool(x & y)


def _minimal_pair(m: BinaryMatroid, c1: frozenset, c2: frozenset) -> MatroidOddC3Cert:
    """Shrink a valid pair to one whose union is as small as possible."""
    circuits = restricted_circuits(m, c1 | c2)
    best = (c1, c2)
    for x in circuits:
        if len(x) % 2 == 0:
            continue
        for y in circuits:
            if y != x and _valid_pair(x, y) and len(x | y) < len(best[0] | best[1]):
                best = (x, y)
    return MatroidOddC3Cert(best[0], best[1])


def extract_oddc3_matroid(m: BinaryMatroid, c1, c2) -> MatroidOddC3Cert:
    """An odd-C3+ restriction from two odd circuits meeting in an even number of elements."""
    c1, c2 = frozenset(c1), frozenset(c2)
    for name, c in (("c1", c1), ("c2", c2)):
        if not is_circuit(m, c):
            raise PreconditionError(f"{name} is not a circuit")
        if len(c) % 2 == 0:
            raise PreconditionError(f"{name} is not odd")
    if len(c1 & c2) % 2:
        raise PreconditionError("circuits meet in an odd number of elements")
    labels = _block_labels(m)
    if len({labels[m.index[e]] for e in c1 | c2}) != 1:
        raise PreconditionError("circuits lie in different blocks")
    if c1 & c2:
        # |c2 - c1| = |c2| - |c1 & c2| is odd
        return _minimal_pair(m, c1, c2)
    a = min(c1, key=m.index.get)
    b = min(c2, key=m.index.get)
    c = circuit_through(m, a, b)
    if c is None:
        raise AssertionError("no circuit through two elements of one block")
    # make c - c2 inclusion-minimal among circuits meeting both c1 and c2
    improved = True
    while improved:
        improved = False
        outside = sorted(c - c2, key=m.index.get)
        for y in outside:
            ground = (c - c2 - {y}) | c2
            for x in sorted(c1 & ground, key=m.index.get):
                found = None
                for z in sorted(c2, key=m.index.get):
                    found = circuit_through(m, x, z, within=ground)
                    if found is not None:
                        break
                if found is not None:
                    c = found
                    improved = True
                    break
            if improved:
                break
    d = c ^ c2
    if not is_circuit(m, d):
        raise AssertionError("c + c2 is not a circuit after minimisation")
    other = c if len(c - c1) % 2 else d
    return _minimal_pair(m, c1, other)


@dataclass(frozen=True)
class FreeMatroidCert:
    """Per block: ('bipartite', even fundamental circuits) or ('basis', odd circuits)."""

    blocks: tuple


def decide_oddc3_free_matroid(m: BinaryMatroid):
    """FreeMatroidCert, or a MatroidOddC3Cert from the first evenly meeting basis pair."""
    out = []
    for blk in matroid_blocks(m):
        sub = m.restrict(blk)
        if len(blk) < 2:
            out.append((blk, "coloop", ()))
            continue
        bip = is_bipartite_matroid(sub)
        if bip.bipartite:
            out.append((blk, "bipartite", bip.even_basis))
            continue
        circuits, masks = [], []
        for c in iter_odd_circuit_basis_matroid(sub):
            cm = m.mask(c)
            for i, prev in enumerate(masks):
                if not (prev & cm).bit_count() & 1:
                    return extract_oddc3_matroid(sub, circuits[i], c)
            circuits.append(c)
            masks.append(cm)
        out.append((blk, "basis", tuple(circuits)))
    return FreeMatroidCert(tuple(out))


def is_oddc3_matroid(m: BinaryMatroid) -> bool:
    """True iff the whole matroid is an odd-C3+: exactly three circuits c1, c2, c1 + c2 covering it."""
    try:
        circuits = restricted_circuits(m, m.elements, max_dim=2)
    except ScaleBoundExceeded:
        return False
    if len(circuits) != 3:
        return False
    ground = frozenset(m.elements)
    for x in circuits:
        for y in circuits:
            if x != y and _valid_pair(x, y) and x | y == ground and (x ^ y) in circuits:
                return True
    return False


# -- text format -------------------------------------------------------------


def parse_matroid(text: str) -> BinaryMatroid:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line.split()))
    if not lines or lines[0][1][0] != "matroid" or len(lines[0][1]) != 2:
        raise ParseError("expected 'matroid <name>' on the first line")
    name = lines[0][1][1]
    if len(lines) < 2 or lines[1][1][0] != "elements":
        raise ParseError("expected an 'elements' line")
    elements = lines[1][1][1:]
    if len(set(elements)) != len(elements):
        raise ParseError("duplicate element id")
    rows = []
    for lineno, tok in lines[2:]:
        if tok[0] != "row" or len(tok) != 2:
            raise ParseError(f"line {lineno}: expected 'row <bits>'")
        bits = tok[1]
        if len(bits) != len(elements) or set(bits) - {"0", "1"}:
            raise ParseError(f"line {lineno}: row must be a 0/1 string of length {len(elements)}")
        rows.append(bits)
    cols = []
    for j in range(len(elements)):
        col = 0
        for r, bits in enumerate(rows):
            if bits[j] == "1":
                col |= 1 << r
        cols.append(col)
    try:
        return BinaryMatroid(elements, cols, len(rows), name)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from exc


def format_matroid(m: BinaryMatroid) -> str:
    out = [f"matroid {m.name}", "elements " + " ".join(str(e) for e in m.elements)]
    for r in range(m.nrows):
        out.append("row " + "".join("1" if c >> r & 1 else "0" for c in m.columns))
    return "\n".join(out) + "\n"


def sorted_elements(m: BinaryMatroid, subset) -> list:
    return sorted(subset, key=lambda e: (m.index.get(e, 0), id_key(e)))
