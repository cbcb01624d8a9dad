import csv
import json

import pytest

from conewave.cli import main


def _run(args, capsys):
    code = main(args)
    return code, capsys.readouterr()


EXAMPLE = "t*x1^2 + t^2*x2 + x1*x2^2"


def test_worked_example_exact(tmp_path, capsys):
    coeffs, sol, res = tmp_path / "c.json", tmp_path / "u.json", tmp_path / "r.json"
    code, out = _run(
        ["--dim", "2", "--f", EXAMPLE, "--convention", "trig-paper", "--out-coeffs", str(coeffs),
         "--out-solution", str(sol), "--out-residual", str(res)],
        capsys,
    )
    assert code == 0
    data = json.loads(coeffs.read_text())
    assert [3, 3, 1, 1, "1/8"] in data["u"]["entries"]
    assert [3, 0, 0, 1, "-3"] in data["u"]["entries"]
    assert data["f_hat"]["spec"]["convention"] == "trig-paper"
    assert json.loads(res.read_text())["exact_residual_zero"] is True
    assert "u = t^2*x2 + t*x1^2 + x1*x2^2 + 4*t*x2 + 2*x1^2 + 2*t + 2*x1 + 6*x2 + 8" in out.out
    assert json.loads(sol.read_text())["mode"] == "exact"


def test_zero_forcing(tmp_path, capsys):
    res = tmp_path / "r.json"
    code, out = _run(["--f", "0", "--out-residual", str(res)], capsys)
    assert code == 0
    assert "u = 0" in out.out
    assert json.loads(res.read_text()) == {"exact_residual_zero": True, "max_fd_residual": 0.0, "probes": 50}


def test_float_mode(tmp_path, capsys):
    res = tmp_path / "r.json"
    code, _ = _run(["--f", EXAMPLE, "--mode", "float", "--out-residual", str(res)], capsys)
    assert code == 0
    rep = json.loads(res.read_text())
    assert rep["exact_residual_zero"] is None and rep["max_fd_residual"] <= 1e-6


def test_parse_error_exit(capsys):
    code, out = _run(["--dim", "2", "--f", "x3 + 1"], capsys)
    assert code == 2
    assert "unknown variable" in out.err and "position 0" in out.err


def test_truncation_fails_check(capsys):
    code, out = _run(["--dim", "1", "--f", "x1^3*t", "--degree", "2"], capsys)
    assert code == 1
    assert '"exact_residual_zero": false' in out.out


def test_speed_and_grid(tmp_path, capsys):
    grid = tmp_path / "g.csv"
    code, _ = _run(
        ["--dim", "3", "--speed", "1/2", "--f", "(t - x1)^2*x3 - 2.5*x2", "--sample-grid", str(grid),
         "--grid-x", "3", "--grid-t", "0:2:3"],
        capsys,
    )
    assert code == 0
    rows = list(csv.reader(grid.open()))
    assert rows[0] == ["x1", "x2", "x3", "t", "u", "U"]
    assert len(rows) > 1
    for r in rows[1:]:
        x = [float(v) for v in r[:3]]
        assert sum(v * v for v in x) ** 0.5 <= 0.5 * float(r[3]) + 1e-12


def test_deterministic(tmp_path, capsys):
    outs = []
    for k in range(2):
        res = tmp_path / f"r{k}.json"
        code, _ = _run(["--f", EXAMPLE, "--mode", "float", "--seed", "7", "--out-residual", str(res)], capsys)
        outs.append(res.read_text())
    assert outs[0] == outs[1]


def test_bad_speed(capsys):
    with pytest.raises(SystemExit):
        main(["--f", "t", "--speed", "abc"])
    code, out = _run(["--f", "t", "--speed", "-1"], capsys)
    assert code == 2
