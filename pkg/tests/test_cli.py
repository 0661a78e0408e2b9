import json

import pytest

from ffgrowth import FSet, build_field
from ffgrowth.cli import main
from ffgrowth.setfile import read_set, write_set


@pytest.fixture
def a_set(tmp_path):
    path = tmp_path / "A.set"
    write_set(FSet(build_field(5), [0, 1]), path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_field(capsys):
    code, out, _ = run(capsys, "field", "--p", "2", "--k", "2")
    assert code == 0
    assert "q: 4" in out and "modulus: [1, 1, 1]" in out
    assert "name=F_2," in out and "name=F_2^2" in out


def test_field_json_with_modulus(capsys):
    code, out, _ = run(capsys, "field", "--p", "2", "--k", "4", "--modulus", "1,1,0,0,1",
                       "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["q"] == 16 and data["modulus"] == [1, 1, 0, 0, 1]
    assert [s["size"] for s in data["subfields"]] == [2, 4, 16]


def test_field_validation(capsys):
    code, _, err = run(capsys, "field", "--p", "4", "--k", "1")
    assert code == 2 and "p must be prime" in err and "--p" in err
    code, _, err = run(capsys, "field", "--p", "2", "--k", "2", "--modulus", "1,0,1")
    assert code == 2 and "--modulus" in err
    code, _, _ = run(capsys, "field")
    assert code == 2


def test_measure(capsys, a_set):
    code, out, _ = run(capsys, "measure", "--file", a_set)
    assert code == 0 and "delta: 3" in out and "case: Case1" in out
    code, out, _ = run(capsys, "measure", "--file", a_set, "--format", "csv")
    header, row = out.strip().splitlines()
    assert header.startswith("p,k,q,model,seed,n,size_sum")
    assert row.split(",")[9] == "3"
    code, out, _ = run(capsys, "measure", "--file", a_set, "--format", "json")
    assert json.loads(out)["delta"] == 3


def test_flag_mismatch_with_set_file(capsys, a_set):
    code, _, err = run(capsys, "measure", "--file", a_set, "--p", "7")
    assert code == 2 and "--p" in err
    code, _, err = run(capsys, "measure", "--file", "/nonexistent.set")
    assert code == 2 and "--file" in err


def test_setop(capsys, tmp_path, a_set):
    out_path = tmp_path / "B.set"
    code, _, _ = run(capsys, "setop", "--file", a_set, "--op", "sumset", "--rhs", a_set,
                     "--out", str(out_path))
    assert code == 0 and read_set(out_path).to_list() == [0, 1, 2]
    code, out, _ = run(capsys, "setop", "--file", a_set, "--op", "difference", "--rhs", a_set)
    assert json.loads(out)["elements"] == [0, 1, 4]
    code, out, _ = run(capsys, "setop", "--file", a_set, "--op", "dilate", "--scalar", "2")
    assert json.loads(out)["elements"] == [0, 2]
    code, out, _ = run(capsys, "setop", "--file", a_set, "--op", "ratio", "--rhs", a_set)
    assert json.loads(out)["elements"] == [0, 1, 4]
    code, out, _ = run(capsys, "setop", "--file", a_set, "--op", "distance")
    assert json.loads(out)["elements"] == [0, 1, 2]
    code, _, err = run(capsys, "setop", "--file", a_set, "--op", "sumset")
    assert code == 2 and "--rhs" in err
    code, _, err = run(capsys, "setop", "--file", a_set, "--op", "translate")
    assert code == 2 and "--scalar" in err


def test_classify_and_hypothesis(capsys, a_set, tmp_path):
    code, out, _ = run(capsys, "classify", "--file", a_set, "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["case"] == "Case1" and data["r"] == 2
    path = tmp_path / "F7.set"
    write_set(FSet(build_field(7), [0, 1, 2]), path)
    code, out, _ = run(capsys, "classify", "--file", str(path))
    assert "case: Case4" in out
    code, out, _ = run(capsys, "classify", "--file", str(path), "--x", str(path))
    assert code == 0 and "case:" in out
    code, out, _ = run(capsys, "hypothesis", "--theorem", "1", "--file", str(path),
                       "--format", "json")
    data = json.loads(out)
    assert not data["passed"] and data["violation"]["a"] == 1 and data["violation"]["G_size"] == 7
    code, out, _ = run(capsys, "hypothesis", "--theorem", "2", "--file", a_set)
    assert code == 0 and "passed: false" in out
    code, _, _ = run(capsys, "hypothesis", "--theorem", "3", "--file", a_set)
    assert code == 2


def test_energy_and_ratio_sum(capsys, a_set):
    code, out, _ = run(capsys, "energy", "--file", a_set, "--format", "json", "--histogram")
    data = json.loads(out)
    assert code == 0 and data["value"] == 6 and data["histogram"] == {"0": 1, "1": 2, "2": 1}
    code, out, _ = run(capsys, "energy", "--file", a_set, "--mixed", "--format", "json")
    data = json.loads(out)
    assert data["value"] == 44 and data["cs_lhs"] == 64 and data["cs_rhs"] == 132
    code, out, _ = run(capsys, "ratio-sum", "--file", a_set)
    assert code == 0 and "sum: 20" in out and "bound: 28" in out


def test_lemma(capsys, tmp_path):
    F = build_field(7)
    x, y = tmp_path / "X.set", tmp_path / "Y.set"
    write_set(FSet(F, [0, 1, 2]), x)
    write_set(FSet(F, [0, 1]), y)
    code, out, _ = run(capsys, "lemma", "--which", "2.4", "--file", str(x), "--rhs", str(y),
                       "--eps", "0", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 2 and data["bound"] == "2"
    code, out, _ = run(capsys, "lemma", "--which", "2.4", "--file", str(x), "--rhs", str(y),
                       "--eps", "0", "--exact")
    assert "count: 2" in out
    code, out, _ = run(capsys, "lemma", "--which", "2.1", "--file", str(x))
    assert code == 0 and "holds: true" in out
    code, out, _ = run(capsys, "lemma", "--which", "2.2", "--file", str(x), "--rhs", str(y),
                       "--rhs", str(y), "--eps", "1/3", "--exact", "--format", "json")
    assert json.loads(out)["witness_size"] == 2
    code, _, err = run(capsys, "lemma", "--which", "2.2", "--file", str(x), "--eps", "1")
    assert code == 2 and "--eps" in err
    big = tmp_path / "A.set"
    write_set(FSet(build_field(101), [0, 1, 5, 17, 40]), big)
    csv_path = tmp_path / "profile.csv"
    code, out, _ = run(capsys, "lemma", "--which", "3.2", "--file", str(big), "--eps", "0.5",
                       "--csv", str(csv_path))
    assert code == 0 and "min_covered_fraction" in out
    lines = csv_path.read_text().splitlines()
    assert lines[0].startswith("kind,element") and len(lines) == 1 + 5 + len(
        FSet(build_field(101), [0, 1, 5, 17, 40]) + FSet(build_field(101), [0, 1, 5, 17, 40]))


def test_sweep(capsys, tmp_path):
    out1, out2 = tmp_path / "s1.csv", tmp_path / "s2.csv"
    argv = ["sweep", "--model", "uniform", "--p", "101", "--n", "6..7", "--trials", "3",
            "--seed", "7"]
    code, text, _ = run(capsys, *argv, "--out", str(out1))
    assert code == 0 and "records: 6" in text
    run(capsys, *argv, "--out", str(out2))
    assert out1.read_bytes() == out2.read_bytes()
    assert len(out1.read_text().splitlines()) == 7
    code, text, _ = run(capsys, *argv, "--format", "csv")
    assert text == out1.read_text()


def test_randomized_commands_require_seed(capsys):
    code, _, err = run(capsys, "sweep", "--model", "uniform", "--p", "101", "--n", "6",
                       "--trials", "3")
    assert code == 2 and "--seed" in err
    code, _, err = run(capsys, "search", "--objective", "delta", "--p", "101", "--n", "10",
                       "--iters", "5")
    assert code == 2 and "--seed" in err
    code, _, err = run(capsys, "sweep", "--model", "uniform", "--p", "101", "--n", "6",
                       "--trials", "0", "--seed", "1")
    assert code == 2 and "--trials" in err


def test_search(capsys):
    argv = ["search", "--objective", "delta", "--p", "101", "--n", "10", "--iters", "200",
            "--seed", "3", "--format", "json"]
    code, out, _ = run(capsys, *argv)
    data = json.loads(out)
    assert code == 0 and data["best_value"] <= data["start_value"]
    assert data["record"]["hyp1"]
    _, again, _ = run(capsys, *argv)
    assert again == out
    code, _, err = run(capsys, "search", "--objective", "maxpair", "--p", "101", "--n", "10",
                       "--iters", "5", "--seed", "3")
    assert code == 2 and "hypothesis" in err


def test_invariant_violation_exit_code(capsys, a_set, monkeypatch):
    from ffgrowth import cli
    from ffgrowth.lemmas import PlunneckeReport
    monkeypatch.setattr(cli, "plunnecke_check", lambda X, Bs: PlunneckeReport(99, 1, 1, False))
    code, _, err = run(capsys, "lemma", "--which", "2.1", "--file", a_set)
    assert code == 1 and "invariant" in err


def test_universe_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("FFGROWTH_UNIVERSE_CAP", "50")
    code, _, err = run(capsys, "field", "--p", "2", "--k", "6")
    assert code == 2 and "cap" in err
