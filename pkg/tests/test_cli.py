import json
import subprocess
import sys

import pytest

from twpainleve import cli, pii_core


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_tw_csv_header(capsys):
    code, out, _ = run(["tw", "--beta", "6", "--t-min", "-8", "--t-max", "4",
                        "--step", "0.05", "--format", "csv"], capsys)
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "t,lnF,F,pdf"
    assert len(lines) == 1 + 241
    assert lines[1].startswith("-8.0,")


def test_tw_json_schema(capsys):
    code, out, _ = run(["tw", "--beta", "2", "--t-min", "-4", "--t-max", "2",
                        "--step", "0.5", "--format", "json"], capsys)
    d = json.loads(out)
    assert code == 0
    assert list(d) == ["beta", "scale", "grid", "lnF", "F", "pdf"]
    assert d["beta"] == 2 and d["scale"] == 1.0 and len(d["grid"]) == 13


def test_tw_internal_time(capsys):
    args = ["tw", "--beta", "6", "--t-min", "-2", "--t-max", "1", "--step", "0.5"]
    _, phys, _ = run(args, capsys)
    _, internal, _ = run(args + ["--internal-time"], capsys)
    assert phys.splitlines()[0] == internal.splitlines()[0]
    assert phys != internal


def test_series_minus(capsys):
    code, out, _ = run(["series", "--tail", "minus", "--order", "8"], capsys)
    rows = [r.split(",") for r in out.splitlines()]
    assert code == 0
    assert rows[0] == ["n", "C_n", "g_n", "u_n", "h_n"]
    assert out.splitlines()[1].startswith("0,1")
    assert float(rows[1][1]) == 1.0
    assert float(rows[2][4]) == 0.0625
    assert len(rows) == 10


def test_series_plus(capsys):
    code, out, _ = run(["series", "--tail", "plus", "--order", "3", "--format", "json"], capsys)
    d = json.loads(out)
    assert code == 0 and d["tail"] == "plus" and len(d["phi_n"]) == 4


def test_determinism(capsys):
    args = ["hm", "--t-min", "-3", "--t-max", "3", "--step", "0.5"]
    a = run(args, capsys)[1]
    b = run(args, capsys)[1]
    assert a == b and a.splitlines()[0] == "t,q,qp,u"


@pytest.mark.parametrize("argv", [
    ["tw", "--tol", "1"],
    ["tw", "--step", "0"],
    ["tw", "--t-min", "2", "--t-max", "1"],
    ["tw", "--beta", "3"],
    ["oracle", "--beta", "4"],
    ["series", "--order", "40"],
    ["frobenius", "--family", "4"],
    ["nonsense"],
    [],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 1
    assert "usage error" in err


def test_numerical_failure(monkeypatch, capsys):
    def boom(**kw):
        raise pii_core.SolverError("boundary-value Newton did not converge at t=-3.5", 1.0)
    monkeypatch.setattr(pii_core, "solve_hm", boom)
    code, out, err = run(["hm"], capsys)
    assert code == 2 and out == ""
    assert "numerical failure in hm" in err and "t=-3.5" in err


def test_verify_failure_still_reports(monkeypatch, capsys):
    import twpainleve.verification as v
    fake = [{"name": "x", "max_residual": 1.0, "tolerance": 0.1, "passed": False, "note": ""}]
    monkeypatch.setattr(v, "run_suite", lambda: fake)
    code, out, _ = run(["verify"], capsys)
    assert code == 3
    assert json.loads(out)["checks"][0]["name"] == "x"


def test_verify_passes(capsys, tmp_path):
    png = tmp_path / "verify.png"
    code, out, _ = run(["verify", "--plot", str(png)], capsys)
    d = json.loads(out)
    assert code == 0 and d["passed"]
    assert all(r["max_residual"] <= r["tolerance"] for r in d["checks"])
    assert png.stat().st_size > 0


def test_frobenius_scan(capsys):
    code, out, _ = run(["frobenius", "--kind", "zero", "--family", "2"], capsys)
    rows = [list(map(float, r.split(","))) for r in out.splitlines()[1:]]
    assert code == 0
    z = [r[0] for r in rows]
    i, j = z.index(0.2), z.index(0.1)
    assert all(rows[i][k] / rows[j][k] >= 2**8 for k in (1, 2, 3))


def test_oracle_command(capsys):
    code, out, _ = run(["oracle", "--beta", "2", "--t-min", "-4", "--t-max", "2",
                        "--step", "1"], capsys)
    rows = [r.split(",") for r in out.splitlines()]
    assert code == 0 and rows[0] == ["t", "F_fredholm", "F_painleve", "diff"]
    assert max(abs(float(r[3])) for r in rows[1:]) <= 1e-6


def test_out_file_and_env_dir(tmp_path, monkeypatch, capsys):
    target = tmp_path / "a.csv"
    code, out, _ = run(["series", "--out", str(target)], capsys)
    assert code == 0 and out == "" and target.read_text().startswith("n,C_n")
    monkeypatch.setenv(cli.OUT_DIR_ENV, str(tmp_path / "env"))
    code, out, _ = run(["series", "--format", "json"], capsys)
    assert code == 0 and out == ""
    assert json.loads((tmp_path / "env" / "series.json").read_text())["tail"] == "minus"


def test_plot_option(tmp_path, capsys):
    png = tmp_path / "tw.png"
    code, _, _ = run(["tw", "--beta", "4", "--t-min", "-6", "--t-max", "3", "--step", "0.1",
                      "--plot", str(png)], capsys)
    assert code == 0 and png.stat().st_size > 1000


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "twpainleve", "series", "--order", "2"],
                       capture_output=True, text=True, check=False)
    assert r.returncode == 0 and r.stdout.startswith("n,C_n,g_n,u_n,h_n\n0,1.0")
