import json
import subprocess
import sys
from pathlib import Path

import pytest

from racklab.cli import main

DATA = Path(__file__).resolve().parent.parent / "data"


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(argv, capsys):
    code, out, err = run(argv, capsys)
    return code, json.loads(out), err


class TestExamples:
    def test_atoms_z9(self, capsys):
        code, rep, _ = run_json(["atoms", "--family", "st_rack", "--n", "9", "--s", "3", "--t", "1"], capsys)
        assert code == 0
        assert rep["atoms"] == [[0], [1, 4, 7], [2, 5, 8], [3], [6]]
        # family spec echoed back expanded
        assert rep["rack"]["family"] == "st_rack" and len(rep["rack"]["table"]) == 9

    def test_lattice_trivial(self, capsys):
        code, rep, _ = run_json(["lattice", "--family", "trivial", "--n", "3"], capsys)
        assert code == 0
        assert len(rep["subracks"]) == 8
        assert rep["atomic"] is True and rep["distributive"] is True

    def test_distinguish(self, capsys):
        code, rep, _ = run_json(["distinguish", "--quandle", DATA / "dihedral5.json",
                                 "--d1", DATA / "5_1.json", "--d2", DATA / "5_2.json"], capsys)
        assert code == 0
        assert rep["verdict"] == "distinguished"


class TestVerbs:
    def test_validate(self, capsys):
        code, rep, _ = run_json(["validate", DATA / "st_9_3_1.json"], capsys)
        assert code == 0
        assert rep["valid"] and not rep["is_quandle"] and rep["conjugation_identity"]

    def test_orbits(self, capsys):
        code, rep, _ = run_json(["orbits", "--family", "st_rack", "--n", "9", "--s", "3", "--t", "1"], capsys)
        assert rep["orbits"] == [[0, 3, 6], [1, 4, 7], [2, 5, 8]]

    def test_lattice_z9_with_oracle(self, capsys):
        code, rep, _ = run_json(["lattice", DATA / "st_9_3_1.json", "--oracle"], capsys)
        assert code == 0
        assert len(rep["subracks"]) == 14
        assert rep["distributive"] is False and rep["witness"]
        assert rep["oracle"] == "agree"

    def test_quandle(self, capsys):
        code, rep, _ = run_json(["quandle", "--family", "parity_shift", "--n", "8"], capsys)
        assert code == 0 and rep["trivial"] is True

    def test_iota(self, capsys):
        code, rep, _ = run_json(["iota", "--family", "parity_shift", "--n", "8"], capsys)
        assert rep["iota"] == [0, 7, 2, 1, 4, 3, 6, 5]
        assert rep["inclusion"]["strict"] is True

    def test_st_analyze(self, capsys):
        code, rep, _ = run_json(["st-analyze", "--n", "9", "--s", "3", "--t", "1", "--seed", "7", "--trials", "50"],
                                capsys)
        assert code == 0
        assert rep["k_certificate"] == 3 and rep["non_alexander"] is True
        assert rep["property_trials"] == {"seed": 7, "trials": 50, "failures": 0}

    def test_st_analyze_from_file(self, capsys):
        code, rep, _ = run_json(["st-analyze", DATA / "st_20_2_9.json"], capsys)
        assert code == 0 and rep["non_alexander"] is False

    def test_color_fixture_with_oracle(self, capsys):
        code, rep, _ = run_json(["color", "--family", "st_rack", "--n", "20", "--s", "2", "--t", "9",
                                 "--corresponding", "--diagram", "fixture:5_1", "--oracle"], capsys)
        assert code == 0
        assert (rep["count"], rep["constant"], rep["nontrivial"], rep["oracle_count"]) == (75, 15, True, 75)

    def test_pretty(self, capsys):
        code, out, _ = run(["atoms", "--family", "dihedral", "--n", "3", "--pretty"], capsys)
        assert code == 0
        assert "atoms: {0} {1} {2}" in out


class TestFailures:
    def test_not_a_rack(self, capsys, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text(json.dumps({"n": 3, "table": [[1, 0, 2], [0, 1, 2], [0, 1, 2]]}))
        code, rep, err = run_json(["validate", f], capsys)
        assert code == 1
        assert rep["violation"] == "self-distributivity" and len(rep["witness"]) == 3
        assert err

    def test_row_not_bijective(self, capsys, tmp_path):
        f = tmp_path / "bad.json"
        f.write_text(json.dumps({"n": 2, "table": [[0, 0], [0, 1]]}))
        code, rep, _ = run_json(["validate", f], capsys)
        assert code == 1 and rep["violation"] == "bijectivity"

    def test_bad_params(self, capsys):
        code, rep, _ = run_json(["st-analyze", "--n", "9", "--s", "3", "--t", "2"], capsys)
        assert code == 1 and rep["violation"] == "parameter"

    def test_coloring_with_rack(self, capsys):
        code, rep, _ = run_json(["color", "--family", "st_rack", "--n", "9", "--s", "3", "--t", "1",
                                 "--diagram", "fixture:trefoil"], capsys)
        assert code == 1 and rep["violation"] == "quandle condition"

    def test_bad_diagram(self, capsys, tmp_path):
        f = tmp_path / "d.json"
        f.write_text(json.dumps({"arcs": 2, "crossings": [{"sign": 1, "over": 0, "under_in": 0, "under_out": 1}]}))
        code, rep, _ = run_json(["color", "--quandle", DATA / "dihedral5.json", "--diagram", f], capsys)
        assert code == 1 and rep["violation"] == "diagram"

    def test_cap(self, capsys):
        code, rep, _ = run_json(["lattice", "--family", "trivial", "--n", "6", "--cap", "10"], capsys)
        assert code == 1 and rep["violation"] == "cap"

    def test_missing_file(self, capsys):
        code, out, err = run(["atoms", "/nonexistent.json"], capsys)
        assert code == 2 and not out and "no such file" in err

    def test_no_rack(self, capsys):
        code, _, err = run(["atoms"], capsys)
        assert code == 2 and err

    def test_unknown_fixture(self, capsys):
        code, _, _ = run(["color", "--quandle", DATA / "dihedral5.json", "--diagram", "fixture:nope"], capsys)
        assert code == 2

    def test_unknown_verb(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2


def test_deterministic_output():
    argv = [sys.executable, "-m", "racklab", "lattice", str(DATA / "st_20_2_9.json")]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first
