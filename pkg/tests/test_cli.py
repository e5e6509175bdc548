import json

import pytest

from frobenius_bundles.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_chern_passes(capsys):
    code, out, _ = run(capsys, "chern", "--n", "2", "--p", "3", "--a", "1")
    rep = json.loads(out)
    assert code == 0 and rep["pass"]
    assert rep["untwisted"]["c1"] == [1, 2]
    assert rep["config"]["q"] == 3


def test_output_is_byte_stable(capsys):
    a = run(capsys, "table", "--box", "3", "--seed", "5")[1]
    b = run(capsys, "table", "--box", "3", "--seed", "5")[1]
    assert a == b


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FROBENIUS_BUNDLES_SEED", "17")
    cfg = json.loads(run(capsys, "chern")[1])["config"]
    assert cfg["seed"] == 17 and cfg["seed_source"] == "env:FROBENIUS_BUNDLES_SEED"
    cfg = json.loads(run(capsys, "chern", "--seed", "2")[1])["config"]
    assert cfg["seed"] == 2 and cfg["seed_source"] == "flag"


def test_bad_seed_env(capsys, monkeypatch):
    monkeypatch.setenv("FROBENIUS_BUNDLES_SEED", "abc")
    assert run(capsys, "chern")[0] == 2


@pytest.mark.parametrize("argv", [
    ["chern", "--p", "4"],
    ["chern", "--k", "5"],
    ["chern", "--format", "csv"],
    ["table", "--box", "1", "2"],
    ["verify", "--suite", "compatibility", "--n", "2"],
    ["bogus"],
    ["verify"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_table_csv(capsys, tmp_path):
    path = tmp_path / "t.csv"
    code, out, _ = run(capsys, "table", "--box", "0", "1", "0", "1", "--format", "csv",
                       "--out", str(path))
    assert code == 0 and out == ""
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "i,s,t,dim,lo,hi,exact"
    assert len(lines) == 1 + 4 * 5


def test_table_dual(capsys):
    code, out, _ = run(capsys, "table", "--bundle", "dual", "--box", "-1", "1", "0", "2")
    assert code == 0 and json.loads(out)["pass"]


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "splitting", "--form", "random", "--seed", "1")
    rep = json.loads(out)
    assert code == 0 and all(c["suite"] == "splitting" for c in rep["checks"])


def test_nondegeneracy_default_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "nondegeneracy")
    assert code == 0 and json.loads(out)["solutions"] == []
    expr = {"kind": "DirectSum", "children": [{"kind": "LineBundle", "a": 0, "b": 1},
                                              {"kind": "LineBundle", "a": 0, "b": 2}]}
    path = tmp_path / "e.json"
    path.write_text(json.dumps(expr))
    rep = json.loads(run(capsys, "nondegeneracy", "--expr-file", str(path), "--box", "2")[1])
    assert rep["solutions"]
    assert run(capsys, "nondegeneracy", "--expr-file", str(tmp_path / "missing.json"))[0] == 2


def test_degenerate_form_file(capsys, tmp_path):
    path = tmp_path / "form.json"
    path.write_text(json.dumps([[1, 1, 0], [1, 1, 0], [0, 0, 1]]))
    assert run(capsys, "table", "--form-file", str(path))[0] == 2


def test_failing_check_exits_one(capsys, monkeypatch):
    from frobenius_bundles import suites
    monkeypatch.setattr(suites, "chern_checks",
                        lambda *a: [suites.check("x", "forced failure", 1, 2)])
    code, out, _ = run(capsys, "verify", "--suite", "chern")
    assert code == 1 and json.loads(out)["pass"] is False


def test_verify_all_skips_compatibility_below_three(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all", "--n", "2")
    suites = {c["suite"] for c in json.loads(out)["checks"]}
    assert code == 0 and "compatibility" not in suites and "charp" in suites
