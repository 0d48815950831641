import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from jjrep.cli import fmt, main, parse_state, StateSpecError


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def write_state(tmp_path, doc, name="state.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


K2_COS = {"kind": "fiber", "k_total": 2, "coefficients": [
    {"n": 0, "sign": "0", "re": 1.0, "im": 0.0},
    {"n": 1, "sign": "+", "re": 0.0, "im": 1.0},
]}
K2_SIN = {"kind": "fiber", "k_total": 2, "coefficients": [
    {"n": 0, "sign": "0", "re": 1.0},
    {"n": 1, "sign": "+", "re": 1.0},
]}
STANDING = {"kind": "fiber", "k_total": 6, "coefficients": [
    {"n": 0, "sign": "0", "re": 0.7},
    {"n": 1, "sign": "+", "re": -1.2},
    {"n": 1, "sign": "-", "re": -1.2},
    {"n": 2, "sign": "+", "re": 0.4},
    {"n": 2, "sign": "-", "re": 0.4},
]}


def test_fmt_round_trip():
    for x in (0.1, -0.5, 1 / 3, 2 - math.sqrt(6), 1e-300, -0.0):
        assert float(fmt(x)) == x
    assert fmt(-0.0) == "0"


# verify -----------------------------------------------------------------------

def test_verify_k8_passes(capsys):
    code, out, _ = run(capsys, "verify", "--K", 8, "--C", 1, "--q", 0, "--alpha", 1, "--phi", 0.7, "--tol", 1e-12, "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["passed"]
    checked = [c for c in doc["checks"] if c["tol"] is not None]
    assert checked and max(c["residual"] for c in checked) <= 1e-13


def test_verify_vacuum(capsys):
    code, out, _ = run(capsys, "verify", "--K", 0)
    assert code == 0 and out.rstrip().endswith("ALL PASS")


def test_verify_reports_failure_with_exit_1(capsys):
    # a tolerance no floating-point gauge conjugation can meet
    code, out, _ = run(capsys, "verify", "--K", 4, "--phi", 1.0, "--q", 0.3, "--tol", 1e-300)
    assert code == 1
    assert "FAIL" in out


@pytest.mark.parametrize("argv", [
    ["verify", "--tol", "-1"],
    ["verify", "--K", "-1"],
    ["verify", "--C", "0"],
    ["spectrum", "--kmax", "-2"],
    ["fiber", "--k", "-1"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["spectrum"])
    assert exc.value.code == 2


# spectrum -----------------------------------------------------------------------

def test_spectrum_kmax1(capsys):
    code, out, _ = run(capsys, "spectrum", "--kmax", 1)
    assert code == 0
    rows = rows_of(out)
    assert [(r["k_total"], r["index"]) for r in rows] == [("0", "0"), ("1", "0"), ("1", "1")]
    vals = [float(r["eigenvalue"]) for r in rows]
    assert np.max(np.abs(np.array(vals) - [0.0, -0.5, 1.5])) <= 1e-15
    assert out.startswith("# jjrep spectrum:")


def test_spectrum_zero_tunneling(capsys):
    _, out, _ = run(capsys, "spectrum", "--kmax", 2, "--alpha", 0, "--q", 0.25)
    vals = sorted(float(r["eigenvalue"]) for r in rows_of(out))
    want = sorted((n + 0.25) ** 2 / 2 for n in (0, 1, -1, 2, 0, -2))
    assert vals == pytest.approx(want, abs=1e-15)


def test_spectrum_kmax8_rows_and_order(capsys):
    _, out, _ = run(capsys, "spectrum", "--kmax", 8)
    rows = rows_of(out)
    assert len(rows) == 45
    keys = [(int(r["k_total"]), float(r["eigenvalue"])) for r in rows]
    assert keys == sorted(keys)


def test_spectrum_json(capsys):
    _, out, _ = run(capsys, "spectrum", "--kmax", 2, "--format", "json")
    doc = json.loads(out)
    assert len(doc["rows"]) == 6 and doc["params"]["C"] == 1.0


def test_spectrum_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(capsys, "spectrum", "--kmax", 6, "--C", 0.3, "--q", 0.1, "--out", a)
    run(capsys, "spectrum", "--kmax", 6, "--C", 0.3, "--q", 0.1, "--out", b)
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_spectrum_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "spectrum", "--kmax", 1, "--out", tmp_path / "missing" / "x.csv")
    assert code == 2 and "cannot write" in err


# fiber ------------------------------------------------------------------------

def test_fiber_json(capsys):
    code, out, _ = run(capsys, "fiber", "--k", 2, "--C", 0.5, "--q", 0, "--alpha", 1)
    doc = json.loads(out)
    assert code == 0
    assert doc["diag"] == [4.0, 0.0, 4.0] and doc["off"] == [-1.0, -1.0]
    assert doc["modes"] == [[1, 0], [0, 1], [-1, 0]]
    assert np.max(np.abs(np.array(doc["eigenvalues"]) - [2 - math.sqrt(6), 4, 2 + math.sqrt(6)])) <= 1e-12


def test_fiber_vacuum(capsys):
    _, out, _ = run(capsys, "fiber", "--k", 0, "--q", 0.6, "--C", 2)
    doc = json.loads(out)
    assert doc["diag"] == [0.36 / 4] and doc["off"] == []


def test_fiber_odd_csv(capsys):
    _, out, _ = run(capsys, "fiber", "--k", 3, "--format", "csv")
    rows = rows_of(out)
    assert len(rows) == 4 and rows[-1]["off_diagonal"] == ""


# current ----------------------------------------------------------------------

def test_current_example(tmp_path, capsys):
    path = write_state(tmp_path, K2_SIN)
    code, out, _ = run(capsys, "current", "--state", path, "--phi-grid", f"0:{math.pi / 2}:2")
    assert code == 0
    rows = rows_of(out)
    assert float(rows[0]["expectation"]) == 0.0
    assert float(rows[1]["expectation"]) == pytest.approx(-2.0, abs=1e-15)
    assert all(float(r["abs_dev"]) <= 1e-12 for r in rows)


def test_current_lattice_state_leaves_closed_form_blank(tmp_path, capsys):
    doc = {"kind": "lattice", "coefficients": [{"p": 0, "r": 1, "re": 1.0}, {"p": 1, "r": 0, "re": 0.0, "im": 1.0}]}
    path = write_state(tmp_path, doc)
    code, out, _ = run(capsys, "current", "--state", path, "--phi-grid=-1:1:5", "--K", 3)
    rows = rows_of(out)
    assert code == 0 and len(rows) == 5
    assert all(r["closed_form"] == "" for r in rows)


@pytest.mark.parametrize("grid", ["0:1", "a:b:3", "0:1:0", "0:inf:3", "0:1:2:3"])
def test_current_bad_grid(tmp_path, capsys, grid):
    path = write_state(tmp_path, K2_SIN)
    code, _, err = run(capsys, "current", "--state", path, "--phi-grid", grid)
    assert code == 2 and "--phi-grid" in err


# fraunhofer ----------------------------------------------------------------------

def test_fraunhofer_zero_at_two_pi(tmp_path, capsys):
    path = write_state(tmp_path, K2_COS)
    code, out, _ = run(capsys, "fraunhofer", "--state", path, "--psi-min", 0, "--psi-max", 4 * math.pi, "--samples", 3)
    rows = rows_of(out)
    assert code == 0
    mid = rows[1]
    assert float(mid["psi"]) == 2 * math.pi
    assert abs(float(mid["total_quadrature"])) <= 1e-12 and abs(float(mid["total_analytic"])) <= 1e-12


def test_fraunhofer_default_grid(tmp_path, capsys):
    path = write_state(tmp_path, K2_COS)
    _, out, _ = run(capsys, "fraunhofer", "--state", path)
    rows = rows_of(out)
    assert len(rows) == 101
    assert max(float(r["abs_dev"]) for r in rows) <= 1e-12
    for r in rows:
        psi = float(r["psi"])
        assert float(r["total_quadrature"]) == pytest.approx(-2 * np.sinc(psi / (2 * math.pi)), abs=1e-12)


def test_fraunhofer_standing_wave_vanishes(tmp_path, capsys):
    path = write_state(tmp_path, STANDING)
    _, out, _ = run(capsys, "fraunhofer", "--state", path, "--alpha", 1.7)
    assert max(abs(float(r["total_quadrature"])) for r in rows_of(out)) <= 1e-12


def test_fraunhofer_validation(tmp_path, capsys):
    path = write_state(tmp_path, K2_COS)
    assert run(capsys, "fraunhofer", "--state", path, "--samples", 1)[0] == 2
    assert run(capsys, "fraunhofer", "--state", path, "--nodes", 0)[0] == 2
    assert run(capsys, "fraunhofer", "--state", path, "--psi-max", "nan")[0] == 2


# state files --------------------------------------------------------------------

def test_state_file_json_syntax_error(tmp_path, capsys):
    path = write_state(tmp_path, '{"kind": "fiber",\n "k_total": 2,\n "coefficients": [}')
    code, _, err = run(capsys, "current", "--state", path, "--phi-grid", "0:1:2")
    assert code == 2 and "line 3 column" in err


def test_state_file_missing(tmp_path, capsys):
    code, _, err = run(capsys, "fraunhofer", "--state", tmp_path / "nope.json")
    assert code == 2 and "cannot read" in err


@pytest.mark.parametrize("doc,needle", [
    ([], "top level"),
    ({"kind": "wave", "coefficients": []}, "kind"),
    ({"kind": "fiber", "k_total": 2}, "coefficients"),
    ({"kind": "fiber", "coefficients": []}, "k_total: missing"),
    ({"kind": "fiber", "k_total": -1, "coefficients": []}, "k_total"),
    ({"kind": "fiber", "k_total": 2, "coefficients": [{"n": 0, "sign": "x", "re": 1}]}, "coefficients[0].sign"),
    ({"kind": "fiber", "k_total": 2, "coefficients": [{"n": 0, "sign": "+", "re": 1}]}, "coefficients[0]: no slot"),
    ({"kind": "fiber", "k_total": 2, "coefficients": [{"n": 1, "sign": "+"}]}, "coefficients[0].re: missing"),
    ({"kind": "fiber", "k_total": 2, "coefficients": [{"n": 1.5, "sign": "+", "re": 1}]}, "coefficients[0].n"),
    ({"kind": "fiber", "k_total": 2, "coefficients": [{"n": 1, "sign": "+", "re": "1"}]}, "coefficients[0].re"),
    ({"kind": "fiber", "k_total": 2, "coefficients": [{"n": 1, "sign": "+", "re": 1}, {"n": 1, "sign": "+", "re": 2}]},
     "coefficients[1]: slot"),
    ({"kind": "lattice", "coefficients": [{"p": 0, "r": 1, "re": 1}, {"p": 0, "r": 1, "re": 1}]}, "coefficients[1]: mode"),
    ({"kind": "lattice", "coefficients": ["x"]}, "coefficients[0]: expected an object"),
])
def test_state_diagnostics(doc, needle):
    with pytest.raises(StateSpecError) as exc:
        parse_state(doc)
    assert needle in str(exc.value)


def test_state_sector_bound():
    with pytest.raises(StateSpecError):
        parse_state(K2_SIN, K=1)
    with pytest.raises(StateSpecError):
        parse_state({"kind": "lattice", "coefficients": [{"p": 3, "r": 0, "re": 1}]}, K=2)
    vec, basis, fs = parse_state(K2_SIN, K=4)
    assert basis.K == 4 and fs.k_total == 2 and np.count_nonzero(vec) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "jjrep", "spectrum", "--kmax", "1"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert len(rows_of(proc.stdout)) == 3
