import json
import os

import pytest

from galcoh.cli import main
from galcoh.scenario import ParseError, Scenario, run_scenario
from galcoh.verify import verify

HERE = os.path.dirname(__file__)
EXAMPLE = os.path.join(HERE, "..", "scripts", "scenarios", "three_place.json")


def strip_timing(report):
    return {k: v for k, v in report.items() if k != "timing"}


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(p)


def test_run_example(tmp_path):
    out = tmp_path / "r.json"
    assert main(["run", EXAMPLE, "--out", str(out)]) == 0
    r = json.loads(out.read_text())
    assert r["errors"] == {}
    assert r["results"]["B3"]["torsion"] == [] and r["results"]["B3"]["free_rank"] == 1
    assert r["results"]["snf"]["diagonal"] == [2, 4]
    assert r["results"]["total"]["criterion"] == [True, False, True]


def test_run_is_deterministic(tmp_path):
    outs = []
    for k in range(2):
        out = tmp_path / ("r%d.json" % k)
        main(["run", EXAMPLE, "--out", str(out), "--seed", "7"])
        outs.append(strip_timing(json.loads(out.read_text())))
    assert outs[0] == outs[1]


def test_unresolved_module_in_task(tmp_path):
    sc = {"groups": {"C2": {"kind": "cyclic", "n": 2}}, "models": {"m": {"kind": "three_place", "group": "C2"}},
          "tasks": [{"id": "bad", "op": "bft", "args": {"model": "m", "module": "nope"}}]}
    out = tmp_path / "r.json"
    assert main(["run", write(tmp_path, "s.json", sc), "--out", str(out)]) == 1
    err = json.loads(out.read_text())["errors"]["bad"]
    assert err["type"] == "UnresolvedReference"


def test_unresolved_reference_in_definition(tmp_path):
    sc = {"modules": {"Z": {"kind": "trivial", "group": "missing"}}, "tasks": []}
    assert main(["run", write(tmp_path, "s.json", sc)]) == 2


def test_parse_errors(tmp_path):
    assert main(["run", write(tmp_path, "bad.json", "{not json")]) == 2
    assert main(["run", write(tmp_path, "bad2.json", {"tasks": [{"args": {}}]})]) == 2
    assert main(["run", write(tmp_path, "bad3.json", {"bogus": {}})]) == 2
    assert main(["run", str(tmp_path / "missing.json")]) == 2


def test_circular_definition():
    sc = Scenario.from_dict({"groups": {"C2": {"kind": "cyclic", "n": 2}},
                             "modules": {"a": {"kind": "sum", "of": ["b"]}, "b": {"kind": "sum", "of": ["a"]}}})
    with pytest.raises(ParseError):
        run_scenario(sc)


def test_unknown_op_is_task_error():
    sc = Scenario.from_dict({"tasks": [{"id": "x", "op": "frobnicate"}]})
    report, nerr = run_scenario(sc)
    assert nerr == 1 and report["errors"]["x"]["type"] == "UnknownOp"


def test_schema_round_trip():
    with open(EXAMPLE) as fh:
        sc = Scenario.from_json(fh.read())
    again = Scenario.from_json(sc.to_json())
    assert again == sc
    assert again.to_json() == sc.to_json()


def test_snf_command(tmp_path):
    out = tmp_path / "s.json"
    assert main(["snf", "--matrix", write(tmp_path, "m.json", [[2, 4], [6, 8]]), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["diagonal"] == [2, 4]
    assert main(["snf", "--matrix", write(tmp_path, "ragged.json", [[1, 2], [3]])]) == 2


def test_verify_command(tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "--suite", "all", "--seed", "42", "--cases", "3", "--out", str(out)]) == 0
    r = json.loads(out.read_text())
    assert r["failed"] == 0 and r["passed"] == 3 * 7


def test_verify_unknown_suite():
    assert main(["verify", "--suite", "nope"]) == 2


def test_verify_deterministic():
    a = verify("all", 5, 4)
    b = verify("all", 5, 4)
    assert strip_timing(a) == strip_timing(b)
    assert json.dumps(strip_timing(a), sort_keys=True) == json.dumps(strip_timing(b), sort_keys=True)


def test_mutant_fails_tn(tmp_path):
    out = tmp_path / "v.json"
    assert main(["verify", "--suite", "tn", "--seed", "1", "--cases", "3", "--mutant", "alpha-zero",
                 "--out", str(out)]) == 1
    r = json.loads(out.read_text())
    assert r["failed"] == 3
    assert all("minimized" in f for f in r["failures"])
