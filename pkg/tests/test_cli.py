import csv
import io
import json
import subprocess
import sys

import pytest

from quadnewton.cli import main


def run(*args):
    proc = subprocess.run([sys.executable, "-m", "quadnewton", *args],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_solve_c_mtn():
    code, out, _ = run("solve", "--problem", "c", "--method", "mtn")
    assert code == 0
    assert "iterations  4" in out
    assert "(1.48803387, 0.75598306)" in out
    assert "e-15" in out or "e-16" in out


def test_solve_d_cn_fails():
    code, out, _ = run("solve", "--problem", "d", "--method", "cn")
    assert code == 2
    assert "No convergence" in out


@pytest.mark.parametrize("args", [
    ("solve", "--problem", "c", "--method", "mtn", "--x0", "1.5"),
    ("solve", "--problem", "z", "--method", "cn"),
    ("solve", "--problem", "c", "--method", "xx"),
    ("solve", "--problem", "c", "--method", "cn", "--eps", "0"),
    ("solve", "--problem", "c", "--method", "cn", "--x0", "1,foo"),
    ("check-jacobian", "--problems", "z"),
    ("bench", "--problems", "q"),
    (),
])
def test_usage_errors_exit_one(args):
    code, _, _ = run(*args)
    assert code == 1


def test_solve_json():
    code, out, _ = run("solve", "--problem", "h", "--method", "hn", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"termination", "iterations", "final", "error_estimate", "coc", "trace"}
    assert doc["iterations"] == 6
    assert doc["trace"][0]["n"] == 0
    assert set(doc["trace"][0]) == {"n", "x", "residual_norm", "step_norm"}
    assert doc["trace"][-1]["step_norm"] is None


def test_solve_trace_and_options(capsys):
    assert main(["solve", "--problem", "c", "--method", "cn", "--trace", "--norm", "inf",
                 "--x0", "2,1.5", "--max-iter", "50"]) == 0
    out = capsys.readouterr().out
    assert "n=0" in out and "x0          (2, 1.5)" in out


def test_bench_csv_h():
    code, out, _ = run("bench", "--problems", "h", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["method"] for r in rows] == ["CN", "TN", "MN", "HN", "MTN"]
    assert [int(r["iterations"]) for r in rows] == [5, 4, 4, 6, 4]


def test_bench_out_file(tmp_path):
    path = tmp_path / "t.md"
    assert main(["bench", "--problems", "d", "--compare", "--out", str(path)]) == 0
    text = path.read_text(encoding="utf-8")
    assert text.count("MATCH") == 5 and "MISMATCH" not in text


def test_bench_bad_out_path(tmp_path):
    assert main(["bench", "--problems", "c", "--out", str(tmp_path / "no" / "x.csv")]) == 1


def test_bench_methods_filter(capsys):
    assert main(["bench", "--problems", "c,b", "--methods", "mtn,cn", "--format", "csv"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [(r["problem"], r["method"]) for r in rows] == [
        ("b", "CN"), ("b", "MTN"), ("c", "CN"), ("c", "MTN")]


def test_check_jacobian_c():
    code, out, _ = run("check-jacobian", "--problems", "c", "--samples", "20", "--seed", "7")
    assert code == 0
    gap = float(out.split("discrepancy")[1].split()[0])
    assert gap <= 1e-6


def test_check_jacobian_all(capsys):
    assert main(["check-jacobian", "--problems", "a,b,c,d,e,f,g,h"]) == 0
    assert capsys.readouterr().out.count("ok") == 8


def test_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "(h)  n=4  x0=(0.5, 0.5, 0.5, 0.2)" in out
