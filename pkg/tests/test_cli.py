import json

import pytest

from pimatroid.cli import main

TWO = {"matroid": {"type": "uniform", "n": 2, "k": 1}, "cost": [1, 2], "target": 2}


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(path)


def run(args, capsys):
    code = main(args)
    return code, capsys.readouterr().out


def test_axioms(tmp_path, capsys):
    code, out = run(["axioms", write(tmp_path, "u.json", {"type": "uniform", "n": 4, "k": 2})], capsys)
    assert code == 0 and json.loads(out)["passed"] and json.loads(out)["paving"]
    bad = {"type": "explicit", "n": 3, "independent": [[], [1], [2], [3], [2, 3]]}
    code, out = run(["axioms", write(tmp_path, "b.json", bad)], capsys)
    doc = json.loads(out)
    assert code == 1 and doc["violation"] == "exchange" and doc["A"] == [2, 3] and doc["B"] == [1]
    code, out = run(["axioms", write(tmp_path, "big.json", {"type": "uniform", "n": 20, "k": 2})], capsys)
    assert code == 2 and json.loads(out)["error"] == "GroundSetTooLarge"
    code, _ = run(["axioms", write(tmp_path, "junk.json", "{")], capsys)
    assert code == 2


def test_adversary_csv(capsys):
    code, out = run(["adversary", "--n", "8", "--k", "4", "--alpha", "18", "--builtin", "budget",
                     "--budget", "7", "--seeds", "20"], capsys)
    lines = out.strip().splitlines()
    assert code == 0 and lines[0] == "seed,queries,defeated,hidden_set,family_size"
    assert len(lines) == 22
    assert lines[-1].startswith("summary,") and lines[-1].split(",")[2] == "1.0"
    assert lines[-1].split(",")[-1] == "8"


def test_adversary_bruteforce_never_defeated(capsys):
    code, out = run(["--format", "json", "adversary", "--n", "6", "--k", "3", "--alpha", "10",
                     "--builtin", "bruteforce", "--seeds", "3"], capsys)
    assert code == 0 and json.loads(out)["summary"]["defeat_rate"] == 0.0


def test_adversary_external_decider_and_jobs(capsys):
    import sys
    cmd = f"{sys.executable} -m pimatroid.deciders budget --budget 2"
    code, out1 = run(["adversary", "--n", "6", "--k", "3", "--alpha", "10", "--decider", cmd, "--seeds", "4"], capsys)
    code2, out2 = run(["--jobs", "3", "adversary", "--n", "6", "--k", "3", "--alpha", "10", "--decider", cmd,
                       "--seeds", "4"], capsys)
    assert code == code2 == 0 and out1 == out2


def test_adversary_errors(capsys):
    code, _ = run(["adversary", "--n", "6", "--k", "3", "--alpha", "100"], capsys)
    assert code == 1
    code, out = run(["adversary", "--n", "6", "--k", "3", "--alpha", "10", "--decider", "echo hi"], capsys)
    assert code == 3 and json.loads(out)["error"] == "ProtocolError"


def test_reduce(tmp_path, capsys):
    path = write(tmp_path, "two.json", TWO)
    code, out = run(["reduce", path, "--opt", "max", "--feas", "is", "--rel", "le"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["H"] == 6 and doc["mol"]["L"] == 8 and doc["eps"] == "1/288" and doc["equiv"]
    code, _ = run(["reduce", path, "--opt", "min", "--feas", "is", "--rel", "le"], capsys)
    assert code == 1


def test_emb(tmp_path, capsys):
    code, out = run(["emb", write(tmp_path, "two.json", TWO), "--opt", "min", "--feas", "bases"], capsys)
    assert code == 0 and json.loads(out) == {"solution": [2], "via_mol": True}
    code, out = run(["emb", write(tmp_path, "no.json", dict(TWO, target=7))], capsys)
    assert code == 1 and json.loads(out)["solution"] is None


def test_sat(tmp_path, capsys):
    code, out = run(["sat", write(tmp_path, "s.json", {"n_vars": 3, "clauses": [[1, 2], [-1, 3], [-3]]})], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["satisfiable"] and doc["trace"]
    code, out = run(["sat", write(tmp_path, "u.cnf", "p cnf 1 2\n1 0\n-1 0\n")], capsys)
    assert code == 1 and not json.loads(out)["satisfiable"]
    code, out = run(["sat", write(tmp_path, "e.json", {"n_vars": 2, "clauses": []})], capsys)
    assert code == 0 and json.loads(out)["empty_assignment"]
    code, _ = run(["sat", write(tmp_path, "bad.cnf", "1 0\n")], capsys)
    assert code == 2


KCM = {"matroid": {"type": "uniform", "n": 6, "k": 3}, "cost": [3, 5, 2, 8, 1, 4], "size": [4, 2, 6, 3, 5, 1],
       "demand": 12}


@pytest.mark.parametrize("eps", ["1/2", "1/3", "1"])
def test_kcm(tmp_path, capsys, eps):
    code, out = run(["kcm", write(tmp_path, "k.json", KCM), "--eps", eps, "--oracle"], capsys)
    doc = json.loads(out)
    from fractions import Fraction
    assert code == 0 and Fraction(doc["ratio"]) <= Fraction(doc["bound"])
    assert doc["size"] >= 12


def test_kcm_kind_and_infeasible(tmp_path, capsys):
    code, out = run(["kcm", write(tmp_path, "k.json", dict(KCM, kind="kcm", demand=6)), "--oracle"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["kind"] == "kcm" and doc["cost"] == doc["opt"]
    code, _ = run(["kcm", write(tmp_path, "x.json", dict(KCM, demand=100))], capsys)
    assert code == 1
    code, _ = run(["kcm", write(tmp_path, "y.json", KCM), "--eps", "abc"], capsys)
    assert code == 2


def test_out_flag_and_determinism(tmp_path, capsys):
    target = tmp_path / "out.csv"
    args = ["--seed", "5", "--out", str(target), "adversary", "--n", "7", "--k", "3", "--alpha", "12",
            "--builtin", "budget", "--budget", "3", "--seeds", "5"]
    assert main(args) == 0
    first = target.read_text()
    assert main(args) == 0
    assert target.read_text() == first and first.splitlines()[1].startswith("5,")
    capsys.readouterr()


def test_csv_for_single_record(tmp_path, capsys):
    code, out = run(["--format", "csv", "emb", write(tmp_path, "two.json", TWO)], capsys)
    assert code == 0 and out.splitlines() == ["solution", "[2]"]
