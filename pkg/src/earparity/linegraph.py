"""Line graphs and recovery of a simple root graph."""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .errors import PreconditionError
from .graph import Graph
from .oddc3 import HPerfectVerdict, line_graph_h_perfect

__all__ = ["line_graph", "LineRoot", "recognize_line_graph", "h_perfect_line_pipeline"]


def line_graph(h: Graph) -> tuple[Graph, dict]:
    """L(h) on the edge ids of ``h``; edges sharing an end (or both ends) are adjacent."""
    at = {v: [] for v in h.vertices}
    for e, (a, b) in h.edges.items():
        at[a].append(e)
        at[b].append(e)
    pairs = set()
    for es in at.values():
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                x, y = es[i], es[j]
                if h.eindex[x] > h.eindex[y]:
                    x, y = y, x
                pairs.add((x, y))
    ordered = sorted(pairs, key=lambda p: (h.eindex[p[0]], h.eindex[p[1]]))
    lg = Graph(h.edges.keys(), {i: p for i, p in enumerate(ordered)}, f"L({h.name})")
    return lg, {e: e for e in h.edges}


@dataclass(frozen=True)
class LineRoot:
    """``root`` has one edge per vertex of the line graph; ``edge_of`` maps vertex -> root edge."""

    root: Graph
    edge_of: dict


def recognize_line_graph(g: Graph) -> LineRoot | None:
    """A simple graph whose line graph is ``g``, or None if there is none.

    Root edge ids are the vertex ids of ``g``; root vertices are integers.
    A triangle component is rooted at a claw.
    """
    if not g.is_simple():
        raise PreconditionError("recognize_line_graph needs a simple graph")
    root_edges = {}
    next_vertex = 0
    for comp in g.components():
        if len(comp) == 1:
            root_edges[comp[0]] = (next_vertex, next_vertex + 1)
            next_vertex += 2
            continue
        idx = {v: i for i, v in enumerate(comp)}
        nxg = nx.Graph()
        nxg.add_nodes_from(range(len(comp)))
        for v in comp:
            for w, _ in g.adj[v]:
                if idx[v] < idx.get(w, -1):
                    nxg.add_edge(idx[v], idx[w])
        try:
            inv = nx.inverse_line_graph(nxg)
        except nx.NetworkXError:
            return None
        names = {}
        for cell in sorted(inv.nodes(), key=lambda c: (len(c), sorted(c))):
            names[cell] = next_vertex
            next_vertex += 1
        for a, b in inv.edges():
            common = set(a) & set(b)
            if len(common) != 1:
                return None
            (i,) = common
            root_edges[comp[i]] = (names[a], names[b])
    root = Graph((), root_edges, f"root({g.name})")
    if root.m != g.n:
        return None
    # the recovered root must reproduce g exactly under the identity on ids
    lg, _ = line_graph(root)
    want = {frozenset(p) for p in g.edges.values()}
    got = {frozenset(p) for p in lg.edges.values()}
    if want != got or not root.is_simple():
        return None
    return LineRoot(root, {v: v for v in g.vertices})


def h_perfect_line_pipeline(g: Graph) -> HPerfectVerdict:
    """Recognise ``g`` as a line graph, then decide h-perfection on its root."""
    found = recognize_line_graph(g)
    if found is None:
        return HPerfectVerdict("not_line_graph")
    verdict = line_graph_h_perfect(found.root)
    return HPerfectVerdict(verdict.status, verdict.cert, found.root, found.edge_of)
