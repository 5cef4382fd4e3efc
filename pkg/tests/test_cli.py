import dataclasses
import json

import pytest

from isotrivial import kodaira
from isotrivial.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_monodromy_examples(capsys):
    code, out, _ = run(capsys, "monodromy", "--matrix", "[[1,1],[-1,0]]")
    assert code == EXIT_OK and "order 6, word +a" in out
    _, out, _ = run(capsys, "monodromy", "--matrix", "[[1,0],[0,1]]")
    assert "order 1, word +(empty)" in out
    _, out, _ = run(capsys, "monodromy", "--matrix", "[[2,1],[1,1]]")
    assert "infinite order" in out


def test_monodromy_conjugacy(capsys):
    code, out, _ = run(capsys, "monodromy", "--word", "a", "--conjugate", "[[0,-1],[1,1]]", "--json", "-")
    assert code == EXIT_OK
    assert json.loads(out)["order"] == 6


@pytest.mark.parametrize("argv", [
    ["monodromy", "--matrix", "[[1,2],[3,4]]"],
    ["monodromy", "--matrix", "junk"],
    ["classify", "--j", "0", "--b", "x"],
    ["classify", "--j", "0"],
    ["configs", "check", "--config", "not json"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE and err.startswith("error:")


def test_classify_twelve_simple(capsys):
    # b(t) = t^12 - 1
    b = ",".join(["-1"] + ["0"] * 11 + ["1"])
    code, out, _ = run(capsys, "classify", "--j", "0", f"--b={b}", "--json", "-")
    assert code == EXIT_OK
    rep = json.loads(out)
    assert rep["valid_k3"] and rep["euler_total"] == 24
    assert rep["fibres"] == [{"type": "II", "count": 12}]


def test_classify_invalid_still_exits_zero(capsys):
    code, out, _ = run(capsys, "classify", "--j", "1728", "--a", "0,0,0,1")
    assert code == EXIT_OK and "order four or greater" in out
    code, out, _ = run(capsys, "classify", "--j", "0", "--b", "1")
    assert code == EXIT_OK and "order 12 at t=infinity" in out and "invalid" in out


def test_configs(capsys):
    code, out, _ = run(capsys, "configs", "starred")
    assert code == EXIT_OK and out.count("= 24") == 4
    code, out, _ = run(capsys, "configs", "check", "--j", "0", "--config", '[{"type": "IVstar", "count": 3}]')
    assert code == EXIT_OK and "necessary conditions pass" in out


def test_torus_commands(capsys):
    _, out, _ = run(capsys, "torus", "fixed-points", "--group", "cyclic-surface", "--k", "3")
    assert "9 isolated fixed points" in out
    _, out, _ = run(capsys, "torus", "obstruction", "--group", "translated", "--n", "3", "--torsion", "0,1/2")
    assert out.splitlines()[1].startswith("OBSTRUCTED")
    _, out, _ = run(capsys, "torus", "inventory", "--group", "cyclic-surface", "--k", "4", "--json", "-")
    assert json.loads(out)["orbits_by_label"] == {"A3": 4, "A1": 6}


def test_json_byte_identical(capsys, tmp_path):
    paths = [tmp_path / f"r{i}.json" for i in range(2)]
    for p in paths:
        assert main(["verify-paper", "--only", "starred-partitions", "inventory-cyclic-6", "--json", str(p)]) == 0
    capsys.readouterr()
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert json.loads(paths[0].read_text())["summary"]["failed"] == 0


def test_verify_failure_exit_code(capsys, monkeypatch):
    bad = dict(kodaira.TABLE)
    bad["IVstar"] = dataclasses.replace(bad["IVstar"], euler=7)
    monkeypatch.setattr(kodaira, "TABLE", bad)
    code, out, _ = run(capsys, "verify-paper", "--only", "fibre-table-IVstar")
    assert code == EXIT_FAILED and "FAIL  fibre-table-IVstar" in out
