"""Regenerate the graph and matroid files under fixtures/."""

from pathlib import Path

from earparity.graph import (Graph, bowtie, c3plus, c5plus, complete_graph, cycle_graph,
                             format_graph, gen_hk, gen_petersen_minus_vertex,
                             gen_totally_odd_subdivision, graph_from_pairs, theta_graph)
from earparity.linegraph import line_graph
from earparity.matroid import BinaryMatroid, direct_sum, fano, format_matroid, from_graph

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def named(g: Graph, name: str) -> Graph:
    return Graph(g.vertices, g.edges, name)


def main():
    OUT.mkdir(exist_ok=True)
    k33 = graph_from_pairs([(a, b) for a in range(3) for b in range(3, 6)], "k33")
    graphs = {
        "k4": complete_graph(4),
        "c5": cycle_graph(5),
        "c6": cycle_graph(6),
        "c3plus": c3plus(),
        "c5plus": c5plus(),
        "bowtie": bowtie(),
        "theta333": theta_graph(3, 3, 3),
        "k33": k33,
        "h2": gen_hk(2),
        "h3": gen_hk(3),
        "petersen-minus-v": gen_petersen_minus_vertex(),
        "tok4-3-1-1-1-1-3": gen_totally_odd_subdivision(complete_graph(4), {0: 3, 5: 3}),
        "line-k4": line_graph(complete_graph(4))[0],
        "line-c5plus": line_graph(c5plus())[0],
        "c4-double": Graph((), {0: (0, 1), 1: (1, 2), 2: (2, 3), 3: (3, 0), 4: (0, 1), 5: (2, 3)}),
    }
    for name, g in graphs.items():
        (OUT / f"{name}.graph").write_text(format_graph(named(g, name)))
    matroids = {
        "fano": fano(),
        "m-k4": from_graph(complete_graph(4)),
        "m-c5plus": from_graph(c5plus()),
        "m-h2": from_graph(gen_hk(2)),
        "m-k33": from_graph(k33),
        "m-fano-plus-c3": direct_sum(fano(), from_graph(cycle_graph(3))),
    }
    for name, m in matroids.items():
        # text format needs whitespace-free element ids
        m = BinaryMatroid([str(e).replace("'", "").replace(", ", "").strip("()") for e in m.elements],
                          m.columns, m.nrows, name)
        (OUT / f"{name}.matroid").write_text(format_matroid(m))


if __name__ == "__main__":
    main()
