import csv
import json

import numpy as np
import pytest

from xop_pdm.cli import run
from xop_pdm.models import LaguerreModel


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array(rows[1:], dtype=float)


def test_spectrum_jacobi(capsys):
    assert run(["spectrum", "--family", "jacobi", "--a", "0.2", "--alpha", "2", "--beta", "2.5", "--levels", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "m,E"
    assert [float(l.split(",")[1]) for l in lines[1:]] == pytest.approx([0, 0.26, 0.60], abs=1e-14)


def test_figure_one(tmp_path):
    out = tmp_path / "fig1.csv"
    assert run(["figure", "--which", "1", "--out", str(out)]) == 0
    header, data = read_csv(out)
    assert header == ["x", "M", "V_eff", "psi0_sq", "psi1_sq"]
    assert data.shape == (2001, 5) and np.all(np.isfinite(data))
    x = data[:, 0]
    assert np.allclose(data[:, 2], LaguerreModel().potential(x), rtol=1e-15, atol=0)
    assert LaguerreModel().potential(0.0) == pytest.approx(-0.6111111111111, rel=1e-12)


def test_csv_format(tmp_path):
    out = tmp_path / "m.csv"
    run(["mass", "--out", str(out), "--n", "5"])
    text = out.read_bytes().decode()
    assert text.endswith("\n") and "\r" not in text
    row = text.splitlines()[2].split(",")
    assert len(row[1].replace("-", "").replace(".", "").split("e")[0].lstrip("0")) <= 17


def test_output_is_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for p in (a, b):
        run(["susy", "--family", "jacobi", "--out", str(p)])
    assert a.read_bytes() == b.read_bytes()


def test_susy_command(tmp_path, capsys):
    out = tmp_path / "s.csv"
    assert run(["susy", "--levels", "2", "--out", str(out)]) == 0
    header, data = read_csv(out)
    assert header == ["x", "B", "V_eff", "V1_closed", "V1_fromB", "partner_psi_0", "partner_psi_1"]
    assert np.allclose(data[:, 3], data[:, 4], rtol=1e-6, atol=1e-6)
    summary = json.loads(capsys.readouterr().err)
    assert summary["shape_invariance"]["remainder"] == pytest.approx(1.0, rel=1e-9)


def test_wavefunction_and_potential_commands(tmp_path):
    out = tmp_path / "w.json"
    assert run(["wavefunction", "--family", "jacobi", "--m", "2", "--format", "json", "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    x, psi = np.array(d["x"]), np.array(d["psi_2"])
    assert np.trapezoid(psi**2, x) == pytest.approx(1.0, abs=1e-6)
    out = tmp_path / "v.csv"
    assert run(["potential", "--v0", "0", "--xmin", "-1", "--xmax", "1", "--n", "3", "--out", str(out)]) == 0
    _, data = read_csv(out)
    assert data[1, 1] == pytest.approx(1 + 0.25 * (4 / 6 + 8 / 9), rel=1e-14)


def test_verify_command(tmp_path):
    out = tmp_path / "r.json"
    assert run(["verify", "--family", "laguerre", "--b", "1", "--alpha", "2", "--levels", "4", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert set(rep) >= {"family", "params", "levels", "invariants", "converged"}
    assert rep["converged"] is True
    assert len(rep["levels"]) == 8
    assert all(lv["abs_err"] <= 5e-3 for lv in rep["levels"])


def test_verify_failure_exit_code(tmp_path):
    # a grid far too coarse to meet tolerance
    out = tmp_path / "r.json"
    assert run(["verify", "--n", "20", "--out", str(out)]) == 1
    assert json.loads(out.read_text())["converged"] is False


def test_check_command(tmp_path):
    out = tmp_path / "c.json"
    assert run(["check", "--family", "jacobi", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["passed"]
    (m,) = rep["models"]
    names = {c["name"] for c in m["invariants"]}
    assert {"shape_invariance", "orthonormality", "spectrum", "partner_spectrum"} <= names
    assert m["notes"][0]["mean"] == pytest.approx(0.04, rel=1e-8)


@pytest.mark.parametrize("argv", [
    [], ["nope"], ["figure"], ["spectrum", "--alpha", "-3"], ["spectrum", "--levels", "0"],
    ["spectrum", "--family", "jacobi", "--alpha", "1", "--beta", "1"], ["spectrum", "--beta", "2"],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == 2
    err = capsys.readouterr().err
    assert err.count("\n") == 1 and err.startswith("xop-pdm: error:")
