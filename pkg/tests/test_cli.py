import json
import subprocess
import sys
import time

import pytest

from graphbell.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def scenario_file(tmp_path):
    def write(**record):
        base = {"name": "t", "graph": {"family": "line", "n": 4}, "expression": "(1+g1)g2(1+g3)g4"}
        path = tmp_path / "s.json"
        path.write_text(json.dumps({**base, **record}))
        return str(path)

    return write


def test_expand_lc4(capsys):
    code, out, _ = run(capsys, "expand", "--preset", "lc4")
    assert code == 0
    assert sorted(out.split()) == sorted(["ZX1X", "-ZYXY", "YY1X", "YXXY"])


def test_expand_constant(capsys, scenario_file):
    code, out, _ = run(capsys, "expand", "--scenario", scenario_file(expression="1"))
    assert code == 0 and out.strip() == "1111"


def test_expand_box4(capsys):
    code, out, _ = run(capsys, "expand", "--preset", "box4")
    assert code == 0 and len(out.strip().splitlines()) == 4


def test_quantum_both(capsys, tmp_path):
    report = tmp_path / "q.json"
    code, out, _ = run(capsys, "quantum", "--preset", "lc5", "--oracle", "both", "--json", str(report))
    assert code == 0 and "8.000000" in out
    data = json.loads(report.read_text())
    assert data["quantum"]["a"] == 8 and data["quantum_dense"] == 8.0


def test_bound(capsys):
    code, out, _ = run(capsys, "bound", "--preset", "lc5", "--method", "bnb")
    assert code == 0 and "2√2" in out


def test_violation_pass_and_mismatch(capsys, scenario_file):
    code, out, _ = run(capsys, "violation", "--preset", "ring6")
    assert code == 0 and "PASS" in out
    path = scenario_file(expected={"violation": {"a": 3, "b": 0, "k": 0}})
    code, out, _ = run(capsys, "violation", "--scenario", path)
    assert code == 3 and "mismatch" in out


def test_parse_error(capsys, scenario_file):
    code, _, err = run(capsys, "expand", "--scenario", scenario_file(expression="(1+g1"))
    assert code == 1 and "position 5" in err


def test_invalid_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{nope")
    code, _, _ = run(capsys, "expand", "--scenario", str(path))
    assert code == 1


def test_validation_errors(capsys, scenario_file):
    assert run(capsys, "expand", "--scenario", scenario_file(expression="g7"))[0] == 2
    assert run(capsys, "expand")[0] == 2
    assert run(capsys, "expand", "--preset", "missing")[0] == 2
    assert run(capsys, "bound", "--preset", "lc4", "--threads", "0")[0] == 2
    assert run(capsys, "expand", "--scenario", "/nonexistent/file.json")[0] == 2


def test_lc(capsys, tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"n": 3, "edges": [[1, 2], [2, 3]]}))
    code, out, _ = run(capsys, "lc", "--graph", str(path), "--vertex", "2")
    assert code == 0
    assert json.loads(out) == {"n": 3, "edges": [[1, 2], [1, 3], [2, 3]]}
    code, _, _ = run(capsys, "lc", "--graph", str(path), "--vertex", "9")
    assert code == 2


def test_reproduce_subset_fast(capsys, tmp_path):
    report = tmp_path / "r.json"
    t0 = time.perf_counter()
    code, out, _ = run(capsys, "reproduce", "--only", "ghz-mermin-*", "--json", str(report))
    assert time.perf_counter() - t0 < 10
    assert code == 0 and "6/6 scenarios pass" in out
    data = json.loads(report.read_text())
    assert [s["name"] for s in data["scenarios"]] == [f"ghz-mermin-{n}" for n in range(3, 9)]


def test_reproduce_empty_registry(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text(json.dumps({"presets": []}))
    assert run(capsys, "reproduce", "--registry", str(path))[0] == 2
    assert run(capsys, "reproduce", "--only", "nothing-matches")[0] == 2


def test_reproduce_mismatch(capsys, tmp_path):
    path = tmp_path / "reg.json"
    record = {
        "name": "wrong",
        "graph": {"family": "line", "n": 4},
        "expression": "(1+g1)g2(1+g3)g4",
        "expected": {"quantum": {"a": 5, "b": 0, "k": 0}},
    }
    path.write_text(json.dumps({"presets": [record]}))
    code, _, err = run(capsys, "reproduce", "--registry", str(path))
    assert code == 3 and "wrong" in err


def test_json_stable_across_threads(capsys, tmp_path):
    texts = []
    for threads in ("1", "4"):
        report = tmp_path / f"r{threads}.json"
        code, _, _ = run(capsys, "reproduce", "--only", "lc*,box*", "--threads", threads, "--json", str(report))
        assert code == 0
        texts.append(report.read_bytes())
    assert texts[0] == texts[1]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "graphbell", "violation", "--preset", "lc4"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "PASS" in proc.stdout
