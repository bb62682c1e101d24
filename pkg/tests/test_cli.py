import csv
import io
import json
import subprocess
import sys

import pytest

from cstatsize.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_table_row(capsys):
    code, out, _ = run(capsys, "solve", "--c", "0.7", "--phi", "0.1", "--se", "0.02551")
    assert code == 0
    assert out == "1154\n"


def test_solve_raw(capsys):
    code, out, _ = run(capsys, "solve", "--c", "0.7", "--phi", "0.1", "--se", "0.02551", "--raw")
    assert code == 0
    n, raw = out.splitlines()
    assert n == "1154" and raw.startswith("n_raw = 1153.03")


def test_solve_from_ci_width(capsys):
    # SE = 0.1 / (2 z_0.975) = 0.0255106728..., root 4251.2079 by mpmath bisection
    code, out, _ = run(capsys, "solve", "--c", "0.8", "--phi", "0.018", "--ci-width", "0.1", "--level", "0.95")
    assert code == 0 and out == "4252\n"


def test_solve_all_methods(capsys):
    code, out, _ = run(capsys, "solve", "--c", "0.85", "--phi", "0.018", "--se", "0.02551", "--method", "all")
    assert code == 0
    lines = out.splitlines()[1:]
    assert len(lines) == 8
    assert {line.split()[1] for line in lines} == {"3271"}


@pytest.mark.parametrize(
    "argv, field",
    [
        (["solve", "--c", "1.2", "--phi", "0.1", "--se", "0.02"], "c"),
        (["solve", "--c", "0.7", "--phi", "0", "--se", "0.02"], "phi"),
        (["solve", "--c", "0.7", "--phi", "0.1", "--se", "-0.02"], "se_target"),
        (["solve", "--c", "0.7", "--phi", "0.1", "--se", "0.02", "--method", "nope"], "method"),
    ],
)
def test_solve_domain_errors(capsys, argv, field):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert field in err


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "--c", "0.7", "--phi", "0.1"],
        ["solve", "--c", "0.7", "--phi", "0.1", "--se", "0.02", "--ci-width", "0.1"],
        ["solve", "--c", "0,7", "--phi", "0.1", "--se", "0.02"],
        ["sweep", "--c-range", "0.5:0.9", "--phi", "0.1", "--se", "0.02"],
        ["curves", "--se-range", "0.01:0.05:x"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_ceiling_exceeded_exit_1(capsys):
    code, _, err = run(capsys, "solve", "--c", "0.7", "--phi", "0.1", "--se", "0.0001", "--method", "iterative")
    assert code == 1 and "1000000" in err


def test_warnings(capsys):
    code, out, err = run(capsys, "solve", "--c", "0.45", "--phi", "0.1", "--se", "0.02551")
    assert code == 0 and "no discrimination" in err
    code, out, err = run(capsys, "solve", "--c", "0.7", "--phi", "0.1", "--se", "0.0001")
    assert code == 0 and "exceeds" in err


def test_solve_json_round_trip(capsys):
    code, out, _ = run(capsys, "solve", "--c", "0.8", "--phi", "0.018", "--ci-width", "0.1", "--format", "json")
    first = json.loads(out)
    code2, out2, _ = run(capsys, "solve", "--c", repr(first["c"]), "--phi", repr(first["phi"]),
                         "--se", repr(first["se"]), "--format", "json")
    assert code == code2 == 0
    assert out2 == out


def test_format_env_override(capsys, monkeypatch):
    monkeypatch.setenv("CSTATSIZE_FORMAT", "csv")
    code, out, _ = run(capsys, "solve", "--c", "0.7", "--phi", "0.1", "--se", "0.02551")
    assert code == 0
    assert out.splitlines()[0] == "method,c,phi,se,n_raw,n"
    assert out.splitlines()[1].endswith(",1154")


def test_verify(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "published examples: 5/5 rows pass" in out


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--format", "json")
    payload = json.loads(out)
    assert code == 0 and payload["passed"] is True
    assert [r["expected"] for r in payload["table1"]] == [1154, 302, 4252, 5125, 3271]
    assert all(r["pass"] for r in payload["table1"])


def test_verify_grid_fast(capsys):
    code, out, _ = run(capsys, "verify", "--grid", "--strategy", "fast", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["grid"]["points"] == 450 and payload["grid"]["all_within_one"] is True


def test_sweep_published_grid(capsys, tmp_path):
    target = tmp_path / "sweep.csv"
    code, out, _ = run(capsys, "sweep", "--c-range", "0.55:0.95:0.05", "--phi-range", "0.01:0.5:0.01",
                       "--se", "0.02551", "--strategy", "fast", "--out", str(target))
    assert code == 0 and out == ""
    data = target.read_bytes()
    assert b"\r" not in data
    rows = list(csv.DictReader(io.StringIO(data.decode("utf-8"))))
    assert len(rows) == 450
    assert all(int(r["oracle_abs_diff_max"]) <= 1 for r in rows)


def test_sweep_missing_axis(capsys):
    code, _, err = run(capsys, "sweep", "--c", "0.7", "--phi", "0.1")
    assert code == 2 and "se" in err


def test_curves(capsys):
    code, out, _ = run(capsys, "curves", "--c", "0.6", "--phi-list", "0.1,0.2,0.3,0.4,0.5",
                       "--se-range", "0.01:0.05:100")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 7 * 5 * 100
    assert list(rows[0]) == ["method", "c", "phi", "se", "n_raw", "n"]


def test_bench_cli(capsys, tmp_path):
    summary = tmp_path / "summary.json"
    code, out, err = run(capsys, "bench", "--methods", "mathgpt,iterative", "--reps", "100",
                         "--strategy", "fast", "--summary", str(summary))
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["method", "sample_ns"] and len(rows) == 201
    stats = json.loads(summary.read_text())
    assert set(stats["methods"]) == {"mathgpt", "iterative"}
    assert "faster than iterative" in err


def test_bench_rejects_small_reps(capsys):
    code, _, err = run(capsys, "bench", "--methods", "mathgpt", "--reps", "10")
    assert code == 2 and "repetitions" in err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cstatsize", "solve", "--c", "0.8", "--phi", "0.5",
                           "--se", "0.02551"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "302\n"
