import io
import json
import os
import subprocess
import sys

import pytest

from finstone import cli, jsonio, verify
from finstone.errors import MalformedInput

DIAMOND = {"elements": ["0", "U", "V", "1"],
           "join": [["0", "U", "V", "1"], ["U", "U", "1", "1"],
                    ["V", "1", "V", "1"], ["1", "1", "1", "1"]],
           "meet": [["0", "0", "0", "0"], ["0", "U", "0", "U"],
                    ["0", "0", "V", "V"], ["0", "U", "V", "1"]],
           "bottom": "0", "top": "1"}
CHAIN_POSET = {"elements": ["a", "b"], "leq": [["a", "b"]]}


@pytest.fixture
def files(tmp_path):
    def put(name, doc):
        p = tmp_path / name
        p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(p)
    return put


def call(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    text = out.getvalue()
    return code, text


def call_json(*argv):
    code, text = call(*argv)
    doc = json.loads(text)
    assert doc["schemaVersion"] == 1
    return code, doc


def test_motives(files):
    code, doc = call_json("motives", files("d.json", DIAMOND))
    assert code == 0
    assert doc["rank"] == 2 and doc["basis"] == ["U", "V"] and doc["snfDiag"] == [1]


def test_basis(files):
    code, doc = call_json("basis", files("d.json", DIAMOND))
    assert code == 0 and abs(doc["pointIndicatorDeterminant"]) == 1


def test_points_and_opens(files):
    code, doc = call_json("points", files("d.json", DIAMOND))
    assert code == 0 and doc["count"] == 2 and doc["points"]["leq"] == []
    code, doc = call_json("opens", files("p.json", CHAIN_POSET))
    assert code == 0 and doc["count"] == 3


def test_opens_round_trips_through_lattice_json(files):
    _, doc = call_json("opens", files("p.json", CHAIN_POSET))
    D = jsonio.lattice_from_json(doc["lattice"])
    assert len(D) == 3 and not doc["lattice"]["lowerBounded"]


def test_sheaves_and_sheafify(files):
    site = files("s.json", {"lattice": DIAMOND})
    code, doc = call_json("sheaves", site)
    assert code == 0 and doc["basisTheorem"]["ok"]
    # sheaves of the fin coverage are principal downsets: 4 of them
    assert doc["count"] == 4
    code, doc = call_json("sheafify", site, files("f.json", {"members": ["0", "U", "V"]}))
    assert code == 0 and sorted(doc["members"]) == ["0", "1", "U", "V"]


def test_explicit_site(files):
    site = {"poset": CHAIN_POSET, "coverings": [{"target": "b", "family": ["a"]}]}
    code, doc = call_json("sheaves", files("s.json", site))
    assert code == 0 and [] in doc["sheaves"] and ["a", "b"] in doc["sheaves"]
    assert ["a"] not in doc["sheaves"]


def test_booleanize(files):
    code, doc = call_json("booleanize", files("d.json", DIAMOND))
    assert code == 0 and abs(doc["determinant"]) == 1 and len(doc["elements"]) == 4


def test_valuation_factor(files):
    val = {"target": {"rank": 1}, "values": {"U": 1, "V": 1, "1": 2}}
    code, doc = call_json("valuation-factor", files("d.json", DIAMOND), files("v.json", val))
    assert code == 0 and doc["matrix"] == [[1, 1]]
    bad = {"target": {"rank": 1}, "values": {"U": 1, "V": 1, "1": 1}}
    code, doc = call_json("valuation-factor", files("d.json", DIAMOND), files("b.json", bad))
    assert code == 2 and doc["error"] == "NotAValuation"


def test_ktheory(files):
    code, doc = call_json("ktheory", files("d.json", DIAMOND))
    assert code == 0 and all(r["agree"] for r in doc["results"])
    prof = {"label": "sphere", "window": [0, 1],
            "groups": {"0": {"rank": 1}, "1": {"torsion": [2]}}}
    code, doc = call_json("ktheory", files("d.json", DIAMOND), files("k.json", prof))
    assert code == 0 and len(doc["results"]) == 1


def test_scissors(files):
    geo = {"dimension": 1, "cuts": [["0", "1/2", "1", "3/2"]], "polytopes": [[0, 1], [1, 2]]}
    code, doc = call_json("scissors", files("g.json", geo))
    assert code == 0 and doc["rank"] == 3 and doc["latticeSize"] == 5
    geo = {"dimension": 1, "cuts": [[0, 1, 2]], "polytopes": [{"lo": [0], "hi": [2]}]}
    code, doc = call_json("scissors", files("g.json", geo))
    assert code == 0 and doc["rank"] == 1


def test_profinite(files):
    sys_ = {"stages": [[1, 2], [1, 2, 3, 4]], "transitions": [{"1": 1, "2": 1, "3": 2, "4": 2}]}
    code, doc = call_json("profinite", files("x.json", sys_))
    assert code == 0 and doc["functionGroups"] == ["Z^2", "Z^4"]
    code, doc = call_json("profinite", "--partitions", "4")
    assert code == 0 and doc["partitions"] == 15 and doc["betaPoints"] == 4


def test_verify_suite():
    code, doc = call_json("verify", "ktheory-routes", "--max", "3")
    assert code == 0 and doc["status"] == "pass"
    assert [s["suite"] for s in doc["suites"]] == ["ktheory-routes"]


def test_verify_is_byte_identical():
    a = call("verify", "profinite", "--seed", "3")
    b = call("verify", "profinite", "--seed", "3")
    assert a == b


def test_verify_failure_exits_three(monkeypatch):
    def failing(name, seed, max_n, random_count):
        t = verify.Tally("always-false")
        t.run(lambda: False, lambda: {"why": "test"})
        return verify.SuiteReport(name, seed, [t])
    monkeypatch.setattr(cli, "run_suite", failing)
    code, doc = call_json("verify", "sheaf")
    assert code == 3 and doc["status"] == "fail"
    assert doc["suites"][0]["checks"][0]["counterexamples"] == [{"input": {"why": "test"},
                                                                 "error": None}]


@pytest.mark.parametrize("argv", [["frobnicate", "x"], ["verify", "nosuch"], ["motives"],
                                  ["sheafify", "only-one.json"], ["profinite"],
                                  ["motives", "/nonexistent/file.json"],
                                  ["opens", "x", "--budget", "0"]])
def test_usage_errors_exit_two(argv):
    code, doc = call_json(*argv)
    assert code == 2 and "error" in doc


def test_malformed_json(files):
    code, doc = call_json("motives", files("bad.json", "{not json"))
    assert code == 2 and doc["error"] == "MalformedInput" and doc["witness"]["line"] == 1


def test_validation_witness(files):
    cyc = {"elements": ["a", "b"], "leq": [["a", "b"], ["b", "a"]]}
    code, doc = call_json("opens", files("c.json", cyc))
    assert code == 2 and doc["error"] == "NotAntisymmetric"


def test_wrong_schema_version(files):
    code, doc = call_json("opens", files("p.json", dict(CHAIN_POSET, schemaVersion=9)))
    assert code == 2 and doc["error"] == "MalformedInput"


def test_not_distributive(files):
    E = ["0", "a", "b", "c", "1"]
    j = lambda x, y: x if x == y or y == "0" else y if x == "0" else "1"
    m = lambda x, y: x if x == y or y == "1" else y if x == "1" else "0"
    doc = {"elements": E, "join": [[j(a, b) for b in E] for a in E],
           "meet": [[m(a, b) for b in E] for a in E], "bottom": "0", "top": "1"}
    code, out = call_json("motives", files("m3.json", doc))
    assert code == 2 and out["error"] == "NotDistributive"


def test_budget_limits_enumeration(files):
    anti = {"elements": [f"x{k}" for k in range(6)], "leq": []}
    code, doc = call_json("opens", files("a.json", anti), "--budget", "10")
    assert code == 2 and doc["error"] == "TooLarge"


def test_plain_output(files):
    code, text = call("motives", files("d.json", DIAMOND), "--plain")
    assert code == 0 and text.splitlines()[0].startswith("schemaVersion")
    code, text = call("verify", "ktheory-routes", "--max", "2", "--plain")
    lines = text.splitlines()
    assert lines[0].split() == ["suite", "check", "cases", "failed"]
    assert lines[-1] == "status pass (seed 7)"


def test_module_entry_point(files):
    path = files("d.json", DIAMOND)
    proc = subprocess.run([sys.executable, "-m", "finstone", "motives", path],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["rank"] == 2
    proc = subprocess.run([sys.executable, "-m", "finstone", "nope"], capture_output=True, text=True)
    assert proc.returncode == 2


# jsonio


def test_jsonio_round_trips():
    from finstone.order import validate_poset
    P = validate_poset(["a", "b", "c"], [("a", "c"), ("b", "c")])
    Q = jsonio.poset_from_json(jsonio.poset_to_json(P))
    assert Q.elements == P.elements and Q.below == P.below
    D = jsonio.lattice_from_json({"posetOfIrreducibles": jsonio.poset_to_json(P),
                                  "lowerBounded": True})
    assert not D.has_top and len(D) == 5


def test_jsonio_rejects_bad_shapes():
    with pytest.raises(MalformedInput):
        jsonio.poset_from_json({"elements": ["a"], "leq": [["a"]]})
    with pytest.raises(MalformedInput):
        jsonio.lattice_from_json({"nothing": 1})
    with pytest.raises(MalformedInput):
        jsonio.group_from_json({"rank": -1})
    with pytest.raises(MalformedInput):
        jsonio.loads("[1,")
    with pytest.raises(MalformedInput):
        jsonio.poset_from_json([1, 2])


def test_budget_does_not_leak(files, monkeypatch):
    monkeypatch.delenv("FINSTONE_BUDGET", raising=False)
    call("opens", files("p.json", CHAIN_POSET), "--budget", "5")
    assert "FINSTONE_BUDGET" not in os.environ
