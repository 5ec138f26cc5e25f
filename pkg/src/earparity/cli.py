"""Command-line interface.

Exit codes: 0 the property holds or the structure is absent, 10 an
obstruction was found (its certificate is on standard output), 1 ``verify``
rejected a certificate, 2 parse or usage error, 3 precondition violated,
4 scale bound exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ParseError, PreconditionError, ScaleBoundExceeded
from .graph import (complete_graph, format_graph, gen_hk, gen_petersen_minus_vertex,
                    gen_totally_odd_subdivision, parse_graph, to_dot, underlying_simple)
from .ears import ear_decomposition
from .oddc3 import FreeCert, decide_oddc3_free, find_strict_oddc3, line_graph_h_perfect
from .linegraph import h_perfect_line_pipeline
from .beta_phi import beta_brute, max_odd_ears
from .tok4 import detect_tok4
from .matroid import (MatroidOddC3Cert, decide_oddc3_free_matroid, is_bipartite_matroid,
                      parse_matroid)
from . import certificates as C

OK, FOUND, REJECTED, USAGE, PRECONDITION, SCALE = 0, 10, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(f"usage: {message}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="earparity", description="Odd-C3+ freeness, ear parities and certificates.")
    p.add_argument("--pretty", action="store_true", help="print a human summary before the JSON")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    for name, help_ in (("oddc3", "decide odd-C3+-freeness"),
                        ("strict", "find a strict odd-C3+ in a multigraph"),
                        ("ears", "ear-decomposition of a 2-connected graph")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("graph")

    s = sub.add_parser("hperfect", help="h-perfection of a line graph")
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--source", help="graph H; decides whether L(H) is h-perfect")
    grp.add_argument("--line", help="graph G; recognises G = L(H) first")

    s = sub.add_parser("beta", help="exact beta by brute force")
    s.add_argument("graph")
    s.add_argument("--max-edges", type=int, default=16)

    s = sub.add_parser("phibar", help="maximum number of odd ears")
    s.add_argument("graph")
    s.add_argument("--max-edges", type=int, default=13)

    s = sub.add_parser("tok4", help="totally odd K4 subdivision in an odd-C3+-free graph")
    s.add_argument("graph")
    s.add_argument("--max-edges", type=int, default=13)

    s = sub.add_parser("matroid", help="binary matroid commands")
    msub = s.add_subparsers(dest="mcmd", required=True, parser_class=_Parser)
    for name in ("oddc3", "bipartite"):
        ms = msub.add_parser(name)
        ms.add_argument("matroid")

    s = sub.add_parser("gen", help="emit a graph file")
    s.add_argument("--format", choices=("text", "dot"), default="text")
    gsub = s.add_subparsers(dest="family", required=True, parser_class=_Parser)
    gs = gsub.add_parser("hk")
    gs.add_argument("k", type=int)
    gsub.add_parser("petersen-minus-vertex")
    gs = gsub.add_parser("tok4", help="K4 with its six edges subdivided into odd paths")
    gs.add_argument("lengths", type=int, nargs="*", help="six odd lengths (default all 1)")

    s = sub.add_parser("verify", help="check a certificate against its graph or matroid")
    s.add_argument("host")
    s.add_argument("cert")
    return p


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc


def _graph(path):
    return parse_graph(_read(path))


class _Out:
    def __init__(self, out, err, pretty):
        self.out, self.err, self.pretty = out, err, pretty

    def emit(self, doc: dict, summary: str):
        (self.out if self.pretty else self.err).write(summary + "\n")
        self.out.write(json.dumps(doc, indent=2) + "\n")


def _cmd_oddc3(a, o):
    g = _graph(a.graph)
    res = decide_oddc3_free(g)
    if isinstance(res, FreeCert):
        o.emit(C.free_doc(res), f"{g.name}: odd-C3+-free")
        return OK
    o.emit(C.oddc3_doc(res), f"{g.name}: odd-C3+ with ends {res.u} and {res.v}")
    return FOUND


def _strict(h, o, label):
    cert = find_strict_oddc3(h)
    if cert is None:
        simple, _ = underlying_simple(h)
        o.emit(C.strict_free_doc(h, decide_oddc3_free(simple)), f"{label}: no strict odd-C3+")
        return OK
    o.emit(C.oddc3_doc(cert, "strict_oddc3"),
           f"{label}: strict odd-C3+ with ends {cert.u} and {cert.v}")
    return FOUND


def _cmd_strict(a, o):
    g = _graph(a.graph)
    return _strict(g, o, g.name)


def _cmd_hperfect(a, o):
    if a.source is not None:
        h = _graph(a.source)
        verdict = line_graph_h_perfect(h)
        label = f"L({h.name}) is {'h-perfect' if verdict.status == 'h_perfect' else 'not h-perfect'}"
        return _strict(h, o, label)
    g = _graph(a.line)
    verdict = h_perfect_line_pipeline(g)
    if verdict.status == "not_line_graph":
        raise PreconditionError(f"{g.name} is not a line graph")
    root = verdict.root
    if verdict.cert is None:
        simple, _ = underlying_simple(root)
        inner = C.strict_free_doc(root, decide_oddc3_free(simple))
        o.emit(C.line_doc(root, inner), f"{g.name} is the line graph of a root; h-perfect")
        return OK
    inner = C.oddc3_doc(verdict.cert, "strict_oddc3")
    o.emit(C.line_doc(root, inner), f"{g.name} is a line graph; not h-perfect")
    return FOUND


def _cmd_ears(a, o):
    g = _graph(a.graph)
    d = ear_decomposition(g)
    odd = sum(e.length % 2 for e in d.ears)
    o.emit(C.ears_doc(d), f"{g.name}: {len(d.ears)} ears, {odd} odd")
    return OK


def _cmd_beta(a, o):
    g = _graph(a.graph)
    res = beta_brute(g, a.max_edges)
    o.emit(C.beta_doc(res.value, res.witness), f"beta = {res.value}")
    return OK


def _cmd_phibar(a, o):
    g = _graph(a.graph)
    val, d = max_odd_ears(g, a.max_edges)
    o.emit(C.phibar_doc(val, d), f"phibar = {val}, phi = {g.cyclomatic_number() - val}")
    return OK


def _cmd_tok4(a, o):
    g = _graph(a.graph)
    v = detect_tok4(g, a.max_edges)
    doc = C.tok4_doc(v)
    if v.status == "tok4":
        o.emit(doc, f"{g.name}: totally odd K4 with branch vertices {list(v.cert.branch)}")
        return FOUND
    if v.status == "none":
        o.emit(doc, f"{g.name}: no totally odd K4 (phibar = {v.phibar})")
        return OK
    o.emit(doc, f"{g.name}: input is not odd-C3+-free")
    o.err.write("precondition violated: input contains an odd-C3+ (certificate above)\n")
    return PRECONDITION


def _cmd_matroid(a, o):
    m = parse_matroid(_read(a.matroid))
    if a.mcmd == "oddc3":
        res = decide_oddc3_free_matroid(m)
        if isinstance(res, MatroidOddC3Cert):
            o.emit(C.matroid_oddc3_doc(m, res), f"{m.name}: odd-C3+ restriction found")
            return FOUND
        o.emit(C.matroid_free_doc(m, res), f"{m.name}: odd-C3+-free")
        return OK
    res = is_bipartite_matroid(m)
    o.emit(C.matroid_bipartite_doc(m, res),
           f"{m.name}: {'bipartite' if res.bipartite else 'odd circuit found'}")
    return OK if res.bipartite else FOUND


def _cmd_gen(a, o):
    if a.family == "hk":
        if a.k < 1:
            raise PreconditionError("k must be at least 1")
        g = gen_hk(a.k)
    elif a.family == "petersen-minus-vertex":
        g = gen_petersen_minus_vertex()
    else:
        lengths = a.lengths or [1] * 6
        if len(lengths) != 6:
            raise ParseError("gen tok4 takes six lengths")
        g = gen_totally_odd_subdivision(complete_graph(4), dict(enumerate(lengths)))
    o.out.write(to_dot(g) if a.format == "dot" else format_graph(g))
    return OK


def _cmd_verify(a, o):
    text = _read(a.host)
    try:
        doc = json.loads(_read(a.cert))
    except json.JSONDecodeError as exc:
        raise ParseError(f"certificate is not JSON: {exc}") from exc
    first = next((ln.split("#", 1)[0].split() for ln in text.splitlines()
                  if ln.split("#", 1)[0].strip()), [""])[0]
    if first == "matroid":
        msg = C.verify_matroid_doc(parse_matroid(text), doc)
    else:
        msg = C.verify_graph_doc(parse_graph(text), doc)
    if msg is None:
        o.out.write("ok\n")
        return OK
    o.out.write(f"rejected: {msg}\n")
    return REJECTED


_COMMANDS = {
    "oddc3": _cmd_oddc3,
    "strict": _cmd_strict,
    "hperfect": _cmd_hperfect,
    "ears": _cmd_ears,
    "beta": _cmd_beta,
    "phibar": _cmd_phibar,
    "tok4": _cmd_tok4,
    "matroid": _cmd_matroid,
    "gen": _cmd_gen,
    "verify": _cmd_verify,
}


def run(argv, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = _build_parser().parse_args(argv)
        return _COMMANDS[args.cmd](args, _Out(out, err, args.pretty))
    except ParseError as exc:
        err.write(f"error: {exc}\n")
        return USAGE
    except PreconditionError as exc:
        err.write(f"precondition violated: {exc}\n")
        return PRECONDITION
    except ScaleBoundExceeded as exc:
        err.write(f"scale bound exceeded: {exc}\n")
        return SCALE


def main() -> None:
    sys.exit(run(sys.argv[1:]))
