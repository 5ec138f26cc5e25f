"""Run every CLI command over the fixture corpus and collect the emitted certificates."""

from __future__ import annotations

import io
import json
from pathlib import Path

from earparity.cli import run

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
FRESH = "__fresh__"

GRAPH_COMMANDS = (["oddc3"], ["strict"], ["hperfect", "--source"], ["hperfect", "--line"],
                  ["ears"], ["beta"], ["phibar"], ["tok4"])
MATROID_COMMANDS = (["matroid", "oddc3"], ["matroid", "bipartite"])

# keys whose values hold edge or element ids
_ID_LISTS = {"edges", "c1", "c2", "elements", "circuit"}


def cli(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def emitted_certificates():
    """(host path, command, document) for every certificate printed over the corpus."""
    found = []
    for path in sorted(FIXTURES.iterdir()):
        cmds = MATROID_COMMANDS if path.suffix == ".matroid" else GRAPH_COMMANDS
        for cmd in cmds:
            code, out, _ = cli(cmd + [path])
            if out.strip():
                found.append((path, " ".join(cmd), code, json.loads(out)))
    return found


def verify(host, doc, tmp_path):
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps(doc))
    return cli(["verify", host, cert])


def id_slots(doc, path=()):
    """Paths (tuples of keys and indices) to every edge or element id in a document."""
    out = []
    if isinstance(doc, dict):
        for k, v in doc.items():
            if k in _ID_LISTS and isinstance(v, list):
                for i, x in enumerate(v):
                    if isinstance(x, list) and k == "edges":
                        out.append(path + (k, i, 0))  # graph doc: [id, u, v]
                    elif not isinstance(x, (list, dict)):
                        out.append(path + (k, i))
            elif k == "circuits" and isinstance(v, list) and v and isinstance(v[0], list):
                for i, c in enumerate(v):
                    out.extend(path + (k, i, j) for j in range(len(c)))
            else:
                out.extend(id_slots(v, path + (k,)))
    elif isinstance(doc, list):
        for i, x in enumerate(doc):
            out.extend(id_slots(x, path + (i,)))
    return out


def mutated(doc, slot, value=FRESH):
    doc = json.loads(json.dumps(doc))
    target = doc
    for key in slot[:-1]:
        target = target[key]
    target[slot[-1]] = value
    return doc
