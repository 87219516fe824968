import json
import subprocess
import sys
from importlib import resources

import pytest

from episkill.cli import ERROR, FAILS, OK, main

FIXTURE = str(resources.files("episkill").joinpath("data/demo.json"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_true(capsys):
    assert run(capsys, "check", FIXTURE, "w2", "K_a p3") == (OK, "true\n", "")


def test_check_false(capsys):
    assert run(capsys, "check", FIXTURE, "w5", "K_a p4") == (FAILS, "false\n", "")


def test_check_json(capsys):
    code, out, _ = run(capsys, "check", FIXTURE, "w5", "<+*>_a K_a p4", "--json")
    assert code == OK
    assert json.loads(out) == {
        "holds": True,
        "world": "w5",
        "formula": "~[+*]_a ~K_a p4",
        "fragment": "L_{⊞}",
        "formula_length": 7,
    }


def test_json_is_deterministic(capsys):
    first = run(capsys, "check", FIXTURE, "w4", "D_{b,a} p4", "--json")
    second = run(capsys, "check", FIXTURE, "w4", "D_{a,b} p4", "--json")
    assert first == second


def test_formula_file(capsys, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("K_a p3\n", encoding="utf-8")
    assert run(capsys, "check", FIXTURE, "w2", "--formula-file", str(path))[0] == OK


def test_formula_twice(capsys, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("p1", encoding="utf-8")
    code, _, err = run(capsys, "check", FIXTURE, "w2", "p1", "--formula-file", str(path))
    assert code == ERROR and "not both" in err


@pytest.mark.parametrize("argv", [
    ("check", FIXTURE, "w2", "K_a (p3"),
    ("check", FIXTURE, "w9", "p1"),
    ("check", FIXTURE, "w2"),
    ("check", "/no/such/file.json", "w2", "p1"),
    ("truthset", FIXTURE, "p0"),
])
def test_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == ERROR
    assert out == "" and err.startswith("error:")


def test_truthset(capsys):
    assert run(capsys, "truthset", FIXTURE, "D_{a,b}(~p1 & p4)") == (OK, "w4\n", "")
    assert run(capsys, "truthset", FIXTURE, "false") == (OK, "\n", "")


def test_truthset_json(capsys):
    code, out, _ = run(capsys, "truthset", FIXTURE, "p4", "--json")
    assert json.loads(out) == {"formula": "p4", "worlds": ["w3", "w4", "w5"]}


def test_validate(capsys):
    assert run(capsys, "validate", FIXTURE) == (OK, "ok: 5 worlds, 14 nonempty edges, 3 agents\n", "")


def test_validate_conflict(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({
        "worlds": ["u", "v"],
        "edges": [{"between": ["u", "v"], "skills": ["s"]}, {"between": ["v", "u"], "skills": []}],
    }), encoding="utf-8")
    code, _, err = run(capsys, "validate", str(path))
    assert code == ERROR and "listed with labels" in err


def test_demo_matches_fixture(capsys):
    code, out, _ = run(capsys, "demo")
    assert code == OK
    assert out == resources.files("episkill").joinpath("data/demo.json").read_text(encoding="utf-8")


def test_demo_to_file(capsys, tmp_path):
    path = tmp_path / "demo.json"
    assert run(capsys, "demo", str(path))[0] == OK
    assert run(capsys, "check", str(path), "w2", "K_a p3")[0] == OK


def write_graph(tmp_path, nodes, edges, root="0"):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"nodes": nodes, "edges": edges, "root": root}), encoding="utf-8")
    return str(path)


def test_ueg(capsys, tmp_path):
    path = write_graph(tmp_path, ["0", "1", "2"], [["0", "1"], ["1", "2"]])
    code, out, _ = run(capsys, "ueg", path)
    assert code == OK
    assert out == "game: PlayerTwo\nlogic: false\nagree: true\n"


@pytest.mark.parametrize("variant", ["plus", "box", "minus"])
def test_ueg_json(capsys, tmp_path, variant):
    path = write_graph(tmp_path, ["0", "1", "2"], [["0", "1"], ["1", "2"], ["0", "2"]])
    code, out, _ = run(capsys, "ueg", path, "--variant", variant, "--json")
    assert code == OK
    assert json.loads(out) == {"game": "PlayerOne", "logic": True, "agree": True, "variant": variant, "edges": 3}


def test_ueg_cap(capsys, tmp_path):
    path = write_graph(tmp_path, ["0", "1", "2"], [["0", "1"], ["1", "2"], ["0", "2"]])
    code, _, err = run(capsys, "ueg", path, "--max-edges", "2")
    assert code == ERROR and "cap" in err


def test_ueg_bad_graph(capsys, tmp_path):
    path = write_graph(tmp_path, ["0"], [["0", "0"]])
    assert run(capsys, "ueg", path)[0] == ERROR


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "episkill", "check", FIXTURE, "w5", "K_a p4"],
                          capture_output=True, text=True)
    assert proc.returncode == FAILS
    assert proc.stdout == "false\n"
