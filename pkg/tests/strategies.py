"""Hypothesis strategies for random graphs and binary matroids."""

from __future__ import annotations

from hypothesis import strategies as st

from earparity.graph import Graph
from earparity.matroid import BinaryMatroid


@st.composite
def multigraphs(draw, max_vertices=7, max_edges=12, min_edges=0, simple=False):
    n = draw(st.integers(2, max_vertices))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    pairs = draw(st.lists(pair, min_size=min_edges, max_size=max_edges))
    if simple:
        seen, kept = set(), []
        for a, b in pairs:
            key = frozenset((a, b))
            if key not in seen:
                seen.add(key)
                kept.append((a, b))
        pairs = kept
    return Graph(range(n), dict(enumerate(pairs)), "rand")


@st.composite
def connected_multigraphs(draw, max_vertices=7, max_edges=12, simple=False):
    n = draw(st.integers(2, max_vertices))
    edges = []
    for v in range(1, n):  # random spanning tree first
        edges.append((draw(st.integers(0, v - 1)), v))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    extra = draw(st.lists(pair, max_size=max(0, max_edges - len(edges))))
    for a, b in extra:
        if simple and any({a, b} == set(e) for e in edges):
            continue
        edges.append((a, b))
    perm = draw(st.permutations(range(n)))
    return Graph(range(n), {i: (perm[a], perm[b]) for i, (a, b) in enumerate(edges)}, "rand")


@st.composite
def two_connected_graphs(draw, max_edges=12, simple=True, max_ears=6):
    """A circuit grown by random ears; always 2-connected."""
    k = draw(st.integers(3 if simple else 2, min(7, max_edges)))
    edges = [(i, (i + 1) % k) for i in range(k)]
    n = k
    for _ in range(draw(st.integers(0, max_ears))):
        room = max_edges - len(edges)
        if room < 1:
            break
        a = draw(st.integers(0, n - 1))
        b = draw(st.integers(0, n - 1).filter(lambda x: x != a))
        length = draw(st.integers(1, min(room, 4)))
        if length == 1 and simple and any({a, b} == set(e) for e in edges):
            length = 2
            if length > room:
                break
        chain = [a] + list(range(n, n + length - 1)) + [b]
        n += length - 1
        edges += list(zip(chain, chain[1:]))
    perm = draw(st.permutations(range(n)))
    return Graph(range(n), {i: (perm[a], perm[b]) for i, (a, b) in enumerate(edges)}, "rand2c")


@st.composite
def binary_matroids(draw, max_elements=10, max_rows=5):
    r = draw(st.integers(1, max_rows))
    n = draw(st.integers(1, max_elements))
    cols = draw(st.lists(st.integers(1, (1 << r) - 1), min_size=n, max_size=n))
    return BinaryMatroid([f"x{i}" for i in range(n)], cols, r, "randM")
