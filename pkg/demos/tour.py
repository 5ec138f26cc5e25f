"""A short walk through the main procedures on small named graphs."""

from earparity.beta_phi import beta_brute, hk_witness, max_odd_ears
from earparity.ears import odd_ear_count
from earparity.graph import (c3plus, c5plus, complete_graph, gen_hk, gen_petersen_minus_vertex,
                             gen_totally_odd_subdivision)
from earparity.linegraph import h_perfect_line_pipeline, line_graph
from earparity.matroid import decide_oddc3_free_matroid, fano, is_bipartite_matroid
from earparity.oddc3 import FreeCert, decide_oddc3_free, find_strict_oddc3
from earparity.tok4 import detect_tok4


def show_oddc3(g):
    res = decide_oddc3_free(g)
    if isinstance(res, FreeCert):
        print(f"{g.name}: odd-C3+-free, {len(res.blocks)} block(s)")
    else:
        lengths = [p.length for p in (res.p1, res.p2, res.p3)]
        print(f"{g.name}: odd-C3+ between {res.u} and {res.v}, path lengths {lengths}")


def main():
    for g in (complete_graph(4), c5plus(), gen_hk(2)):
        show_oddc3(g)

    print("C3plus strict odd-C3+:", find_strict_oddc3(c3plus()))
    lk4, _ = line_graph(complete_graph(4))
    print("L(K4):", h_perfect_line_pipeline(lk4).status)

    t = gen_petersen_minus_vertex()
    print(f"beta({t.name}) = {beta_brute(t).value}")
    for k in (2, 3):
        d = hk_witness(k)
        print(f"H_{k}: beta = {beta_brute(gen_hk(k)).value}, witness has {odd_ear_count(d)} odd ears")

    g = gen_totally_odd_subdivision(complete_graph(4), {0: 3, 5: 3})
    val, _ = max_odd_ears(g)
    v = detect_tok4(g)
    print(f"{g.name}: phibar = {val}, detector says {v.status}, branch {list(v.cert.branch)}")

    f = fano()
    print("F7 bipartite:", is_bipartite_matroid(f).bipartite)
    print("F7 odd-C3+-free:", type(decide_oddc3_free_matroid(f)).__name__)


if __name__ == "__main__":
    main()
