import json
import subprocess
import sys
from importlib import resources

import pytest

from graphvn import fixtures
from graphvn.cli import main

FIX = {name: str(resources.files("graphvn") / "fixtures" / f"{name}.json") for name in fixtures.NAMES}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_ok(capsys):
    code, out, _ = run(capsys, "validate", FIX["base_case1"])
    assert code == 0 and json.loads(out) == {"valid": True, "violations": []}


def test_validate_bad_weight(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"vertices": ["0", "1"], "edges": [
        {"id": "a", "source": "0", "target": "1", "weight": "2", "op": "b"},
        {"id": "b", "source": "1", "target": "0", "weight": "2", "op": "a"}]}))
    code, out, err = run(capsys, "validate", str(p))
    assert code == 1 and not json.loads(out)["valid"] and "weight(op)" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "validate", "/no/such/file.json")
    assert code == 1 and "No such file" in err


def test_classify(capsys, tmp_path):
    fig = tmp_path / "m.png"
    code, out, _ = run(capsys, "classify", FIX["base_case1"], "--figure", str(fig))
    doc = json.loads(out)
    assert code == 0 and doc["group"]["generators"] == ["2/1"]
    assert doc["atoms"] == [{"vertex": "1", "mass": "3/1", "deficiency": "1/2"}]
    assert fig.stat().st_size > 0


def test_classify_normalized_and_tracial(capsys):
    _, out, _ = run(capsys, "classify", FIX["base_case1"], "--normalize")
    doc = json.loads(out)
    assert doc["normalized"] and doc["atoms"][0]["mass"] == "3/7"
    _, out, _ = run(capsys, "classify", FIX["tracial_triangle"])
    assert json.loads(out)["diffuse"]["kind"] == "tracial"
    _, out, _ = run(capsys, "classify", FIX["balanced_b"])
    assert json.loads(out)["atoms"] == []
    code, _, err = run(capsys, "classify", FIX["base_case1"], "--base", "9")
    assert code == 1 and "unknown vertex" in err


def test_moment(capsys, tmp_path):
    dump = tmp_path / "basis.txt"
    code, out, _ = run(capsys, "moment", FIX["base_case1"], "--word", "e1,e1^op", "--dump-basis", str(dump))
    doc = json.loads(out)
    assert code == 0 and doc["exact"] == "sqrt(6)" and doc["float"] == 2.449489742783178
    assert doc["deviation"] <= 1e-9 and doc["passed"]
    assert dump.read_text().splitlines()[2] == "2\te1"
    _, out, _ = run(capsys, "moment", FIX["base_case1"], "--word", "e1,e1^op,e1")
    assert json.loads(out)["exact"] == "0"


def test_moment_too_long(capsys):
    code, _, err = run(capsys, "moment", FIX["base_case1"], "--word", ",".join(["e1,e1^op"] * 4))
    assert code == 2 and "exceeds" in err
    code, _, _ = run(capsys, "moment", FIX["base_case1"], "--word", ",".join(["e1,e1^op"] * 4), "--depth", "8")
    assert code == 0


def test_moment_basis_cap(capsys, monkeypatch):
    monkeypatch.setenv("GRAPHVN_MAX_BASIS", "10")
    code, _, err = run(capsys, "moment", FIX["base_case1"], "--word", "e1,e1^op")
    assert code == 2 and "cap 10" in err


def test_unknown_edge_is_input_error(capsys):
    code, _, err = run(capsys, "moment", FIX["base_case1"], "--word", "zz")
    assert code == 1 and "unknown edge" in err


def test_other_commands(capsys):
    _, out, _ = run(capsys, "cycle-group", FIX["switcheroo"])
    assert json.loads(out)["generators"] == ["2/3"]
    _, out, _ = run(capsys, "state", FIX["tracial_triangle"])
    assert json.loads(out)["state"] == {"0": "1/1", "1": "2/1", "2": "6/1"}
    _, out, _ = run(capsys, "eigen-check", FIX["base_case1"], "--edge", "e2", "--word", "e2^op")
    assert json.loads(out)["holds"] and json.loads(out)["lhs"] == "2*sqrt(3)"
    code, out, _ = run(capsys, "cross-validate", FIX["switcheroo"], "--max-len", "4")
    assert code == 0 and json.loads(out)["passed"]
    _, out, _ = run(capsys, "fixture", "base_case1")
    assert json.loads(out) == fixtures.load_fixture("base_case1").to_dict()


def test_tl_check(capsys):
    code, out, _ = run(capsys, "tl-check", FIX["balanced_a"], FIX["balanced_b"], "--max-n", "2")
    doc = json.loads(out)
    assert code == 0 and doc["exponent"] == "1/2" and doc["graph_independent"]
    code, out, _ = run(capsys, "tl-check", FIX["balanced_a"], FIX["balanced_b"], "--max-n", "1", "--exponent", "1")
    assert code == 2 and not json.loads(out)["trace_preserving"]
    code, _, _ = run(capsys, "tl-check", FIX["balanced_a"], FIX["base_case1"])
    assert code == 1


def test_usage_error_exits_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["moment", FIX["base_case1"]])
    assert exc.value.code == 1


def test_deterministic_output():
    cmd = [sys.executable, "-m", "graphvn", "classify", FIX["base_case3"]]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["schema"] == "graphvn-report/1"
