import json
import subprocess
import sys

import pytest

from earparity.graph import gen_hk, parse_graph
from certs import FIXTURES, cli, emitted_certificates, verify


def fx(name):
    return FIXTURES / name


@pytest.mark.parametrize("argv,code", [
    (["oddc3", fx("k4.graph")], 0),
    (["oddc3", fx("c5plus.graph")], 10),
    (["strict", fx("c3plus.graph")], 0),
    (["strict", fx("c4-double.graph")], 0),
    (["hperfect", "--source", fx("c5plus.graph")], 10),
    (["hperfect", "--line", fx("line-k4.graph")], 0),
    (["hperfect", "--line", fx("line-c5plus.graph")], 10),
    (["tok4", fx("k4.graph")], 10),
    (["tok4", fx("c5.graph")], 0),
    (["tok4", fx("c5plus.graph")], 3),
    (["matroid", "oddc3", fx("fano.matroid")], 0),
    (["matroid", "bipartite", fx("fano.matroid")], 10),
    (["matroid", "oddc3", fx("m-c5plus.matroid")], 10),
    (["matroid", "bipartite", fx("m-k33.matroid")], 0),
])
def test_exit_codes(argv, code):
    assert cli(argv)[0] == code


def test_oddc3_k4_prints_basis():
    code, out, err = cli(["oddc3", fx("k4.graph")])
    doc = json.loads(out)
    assert code == 0 and doc["kind"] == "oddc3_free"
    assert len(doc["blocks"][0]["circuits"]) == 3
    assert "odd-C3+-free" in err


def test_beta_petersen_summary():
    code, out, err = cli(["--pretty", "beta", fx("petersen-minus-v.graph")])
    assert code == 0 and out.startswith("beta = 4\n")
    doc = json.loads(out.split("\n", 1)[1])
    assert doc["value"] == 4 and len(doc["witness"]) == 4


def test_usage_and_parse_errors():
    assert cli([])[0] == 2
    assert cli(["oddc3"])[0] == 2
    assert cli(["bogus"])[0] == 2
    assert cli(["oddc3", fx("missing.graph")])[0] == 2
    assert cli(["oddc3", fx("fano.matroid")])[0] == 2


def test_precondition_and_scale_errors(tmp_path):
    claw = tmp_path / "claw.graph"
    claw.write_text("graph claw\nv a\nv b\nv c\nv d\ne 0 c a\ne 1 c b\ne 2 c d\n")
    code, _, err = cli(["hperfect", "--line", claw])
    assert code == 3 and "not a line graph" in err
    assert cli(["ears", fx("bowtie.graph")])[0] == 3
    assert cli(["phibar", fx("h3.graph")])[0] == 4
    assert cli(["beta", fx("h3.graph"), "--max-edges", "10"])[0] == 4
    assert cli(["gen", "hk", "1"])[0] == 3


def test_gen_round_trips(tmp_path):
    code, out, _ = cli(["gen", "hk", "3"])
    assert code == 0
    g = parse_graph(out)
    assert (g.n, g.m) == (gen_hk(3).n, gen_hk(3).m)
    code, out, _ = cli(["gen", "tok4", "3", "1", "1", "1", "1", "3"])
    g = parse_graph(out)
    assert g.m == 10
    path = tmp_path / "t.graph"
    path.write_text(out)
    assert cli(["tok4", path])[0] == 10
    assert cli(["gen", "tok4", "1", "1"])[0] == 2
    assert cli(["gen", "--format", "dot", "petersen-minus-vertex"])[1].startswith("graph ")


def test_verify_rejects_tampered_value(tmp_path):
    _, out, _ = cli(["phibar", fx("k4.graph")])
    doc = json.loads(out)
    doc["value"] = 3
    code, out, _ = verify(fx("k4.graph"), doc, tmp_path)
    assert code == 1 and out.startswith("rejected:")


def test_verify_bad_json(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli(["verify", fx("k4.graph"), bad])[0] == 2


def test_output_is_deterministic():
    first = [(p, c, d) for p, c, _, d in emitted_certificates()]
    second = [(p, c, d) for p, c, _, d in emitted_certificates()]
    assert first == second


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "earparity", "oddc3", str(fx("k4.graph"))],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["kind"] == "oddc3_free"
