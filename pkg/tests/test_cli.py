import csv
import io
import json

import pytest

from gradedpi.algebra_file import export_text
from gradedpi.cli import combinatorial_checks, main
from gradedpi.graded_algebra import builtin


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_codim_table(capsys):
    code, out, _ = run(capsys, "codim", "group_algebra:Z_2", "--n-max", "5", "--workers", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["n", "c_n_gr", "root"]
    assert [l.split() for l in lines[1:]] == [[str(n), str(2**n), "2.0"] for n in range(1, 6)]


def test_codim_csv_and_nilpotent(capsys):
    code, out, _ = run(capsys, "codim", "nilpotent_1", "--n-max", "2", "--format", "csv")
    assert code == 0
    assert list(csv.reader(io.StringIO(out))) == [["n", "c_n_gr", "root"], ["1", "1", "1.0"],
                                                  ["2", "0", "0"]]


def test_colength_json(capsys):
    code, out, _ = run(capsys, "colength", "group_algebra:Z_2", "--n-max", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert doc["rows"][2] == {"n": 3, "l_n_gr": "4", "bound": str(2 * 4**6), "verdict": "holds"}
    code, out, _ = run(capsys, "colength", "field", "--n-max", "3", "--format", "json")
    assert json.loads(out)["rows"][2]["bound"] == str(4**3)


def test_file_input_and_export(capsys, tmp_path):
    code, out, _ = run(capsys, "export", "M2_Z2")
    assert code == 0 and out == export_text(builtin("M2_Z2"))
    p = tmp_path / "m.alg"
    p.write_text(out)
    code, out, _ = run(capsys, "codim", str(p), "--n-max", "3", "--format", "csv")
    assert code == 0 and out.splitlines()[-1].startswith("3,28,")


def test_out_flag(capsys, tmp_path):
    target = tmp_path / "o.csv"
    code, out, _ = run(capsys, "codim", "field", "--n-max", "2", "--format", "csv",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[0] == "n,c_n_gr,root"


def test_input_errors(capsys, tmp_path):
    code, _, err = run(capsys, "codim", "no_such_algebra")
    assert code == 2 and "neither a file nor a builtin" in err
    bad = tmp_path / "bad.alg"
    bad.write_text("labels: 0 1\ntable: 0 1 / 1 0\nbasis: e@0 g@1\nprod: e*e = g\n")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2 and "(0, 0, 1)" in err
    bad.write_text("labels: 0\ntable: 0\nbasis: e@0\nprod: e*e = 2 +\n")
    code, _, err = run(capsys, "codim", str(bad))
    assert code == 2 and "line 4" in err
    code, _, err = run(capsys, "codim", "cross3", "--associative")
    assert code == 2 and "not associative" in err
    code, _, _ = run(capsys, "codim", "field", "--n-max", "0")
    assert code == 2


def test_cap_and_strict(capsys):
    code, out, err = run(capsys, "codim", "M2", "--n-max", "5", "--max-columns", "300")
    assert code == 0 and "truncated at n=4" in out and "truncated" in err
    assert [l.split()[0] for l in out.splitlines()[1:4]] == ["1", "2", "3"]
    code, out, _ = run(capsys, "codim", "M2", "--n-max", "5", "--max-columns", "300", "--strict",
                       "--format", "json")
    assert code == 3
    assert json.loads(out)["truncated"] == {"cap": "max_columns", "limit": 300,
                                            "requested": 4 * 4**4, "n": 4}
    code, _, _ = run(capsys, "codim", "M2", "--n-max", "3", "--max-columns", "300", "--strict")
    assert code == 0


def test_seed_default_is_printed(capsys):
    code, out, err = run(capsys, "report", "group_algebra:Z_2", "--n-max", "3")
    assert code == 0 and "seed: 0 (default)" in err
    assert "graded simple over a commutative semigroup" in out
    code, out, err = run(capsys, "report", "M2_Z2", "--n-max", "3", "--seed", "5", "--format", "json")
    doc = json.loads(out)
    assert err == "" and doc["seed"] == 5
    assert doc["applicability"]["statement"].endswith("and simple")
    code, out, _ = run(capsys, "report", "direct_sum_Z2", "--n-max", "2")
    assert "no existence guarantee" in out


def test_verify_outcomes(capsys):
    code, out, _ = run(capsys, "verify", "M2_Z2", "--n-max", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"]
    names = [v["name"] for v in doc["verdicts"]]
    assert names[:6] == ["validation", "codimension_bound", "colength_bound", "growth_ratio",
                         "unital_monotone", "direct_summation_oracle"]
    assert "scaled_dimension_inequality" in names
    code, out, _ = run(capsys, "verify", "M2", "--n-max", "5", "--max-columns", "300",
                       "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["truncated"]["n"] == 4
    assert any(v["name"] == "degrees_beyond_cap" and v["status"] == "skipped" for v in doc["verdicts"])


def test_builtins_listing(capsys):
    code, out, _ = run(capsys, "builtins", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and {r["name"] for r in rows} >= {"field", "M2_Z2", "nilpotent_1"}


def test_combinatorial_checks_all_pass():
    assert all(v.ok for v in combinatorial_checks())
