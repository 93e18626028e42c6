import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from fourterm import theta as th
from fourterm.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def test_classify_quarter(capsys):
    code, doc = run_json(capsys, "classify", "--b", "1", "--c", "2")
    assert code == 0
    data = doc["data"]
    assert data["verdict"] == "AllReal" and data["a"] == 0.25
    assert data["endpoint"] == 8 * th.interval_endpoint(0.25)
    assert doc["meta"]["command"] == "classify"
    assert doc["meta"]["tolerances"]["tol_real"] == 1e-7


def test_classify_outside(capsys):
    code, doc = run_json(capsys, "classify", "--b", "1", "--c", "1")
    assert code == 0
    assert doc["data"]["verdict"] == "NotAllReal"
    assert doc["data"]["witness"]["z_star"]["im"] != 0


def test_zeros(capsys):
    code, doc = run_json(capsys, "zeros", "--a", "0", "--m", "3")
    assert code == 0
    (row,) = doc["data"]["zeros"]
    assert row["re"] == pytest.approx(-1.0) and row["im"] == 0.0


def test_scan_grid(capsys):
    code, doc = run_json(capsys, "scan", "--b-range", "-2:2", "--c-range", "-2:2", "--grid", "41")
    assert code == 0
    cells = doc["data"]["cells"]
    assert len(cells) == 1681
    for cell in cells:
        b, c = Fraction(cell["b_exact"]), Fraction(cell["c_exact"])
        want = (c == 0 and b >= 0) or (c != 0 and -1 <= b / c**2 <= Fraction(1, 3))
        assert (cell["verdict"] == "AllReal") == want


def test_scan_csv(capsys):
    code, out = run(capsys, "scan", "--grid", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 9
    assert set(rows[0]) == {"b", "c", "b_exact", "c_exact", "verdict", "condition"}


def test_check_csv_header(capsys):
    code, out = run(capsys, "check", "--a", "0.3", "--m", "12", "--format", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0].split(",")[:3] == ["m", "index", "re"]
    assert len(lines) == 5


def test_check_json(capsys):
    code, doc = run_json(capsys, "check", "--b", "0.3", "--c", "-1.5", "--m", "30")
    data = doc["data"]
    assert code == 0
    assert data["verdict"] == "Hyperbolic" and data["all_in_interval"]
    assert data["g_zero_count"] == 10 and data["max_match_residual"] <= 1e-6
    assert data["recurrence_residual"] <= 1e-12


def test_check_outside_region_is_not_failure(capsys):
    code, doc = run_json(capsys, "check", "--a", "2", "--m", "20")
    assert code == 0 and doc["data"]["expected"] is None


def test_deterministic(capsys):
    outs = [run(capsys, "density", "--a", "0", "--m-max", "20", "--window=-2:-4/27")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_gen_round_trip(capsys):
    _, doc = run_json(capsys, "gen", "--a", "-0.25", "--m", "18")
    coeffs = doc["data"]["polynomials"][18]["coeffs"]
    zeros = np.sort(np.polynomial.polynomial.polyroots(coeffs).real)
    _, zdoc = run_json(capsys, "zeros", "--a", "-0.25", "--m", "18")
    want = np.sort([r["re"] for r in zdoc["data"]["zeros"]])
    np.testing.assert_allclose(zeros, want, rtol=1e-6)


def test_gen_zero_polynomial(capsys):
    _, doc = run_json(capsys, "gen", "--b", "0", "--c", "0", "--m", "2")
    assert doc["data"]["polynomials"][1] == {"m": 1, "degree": None, "coeffs": []}


def test_curve(capsys):
    code, doc = run_json(capsys, "curve", "--a", "0.3", "--m", "6", "--grid", "50")
    rows = doc["data"]["rows"]
    assert code == 0 and len(rows) == 50
    z = [r["z"] for r in rows]
    assert all(x < y for x, y in zip(z, z[1:]))


def test_curve_czero(capsys):
    code, doc = run_json(capsys, "curve", "--b", "1", "--c", "0", "--m", "6", "--grid", "20")
    z = [r["z"] for r in doc["data"]["rows"]]
    assert code == 0 and all(x > y for x, y in zip(z, z[1:]))


def test_witness(capsys):
    code, doc = run_json(capsys, "witness", "--a", "1")
    data = doc["data"]
    assert code == 0 and data["found"]
    assert data["attraction"]["found"]


def test_witness_label(capsys):
    code, doc = run_json(capsys, "witness", "--a", "2")
    assert code == 0
    assert doc["data"]["attraction"]["label"] == "not found at desk scale"


def test_module_error_is_structured(capsys):
    code, doc = run_json(capsys, "witness", "--a", "0.1")
    assert code == 1
    assert doc["error"]["type"] == "DomainError"


def test_empty_window_error(capsys):
    code, doc = run_json(capsys, "density", "--a", "0", "--m-max", "5", "--window", "0:1")
    assert code == 1 and doc["error"]["type"] == "EmptyWindow"


@pytest.mark.parametrize(
    "argv",
    [
        ["zeros", "--m", "3"],
        ["zeros", "--a", "0", "--b", "1", "--c", "1", "--m", "3"],
        ["zeros", "--a", "0", "--m", "-3"],
        ["zeros", "--a", "0", "--m", "3", "--tol-real", "0"],
        ["zeros", "--a", "0", "--m", "3", "--tol-residual", "-1"],
        ["scan", "--b-range", "2:-2"],
        ["frobnicate"],
        [],
    ],
)
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_out_and_env(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("FOURTERM_OUTPUT_DIR", str(tmp_path))
    code = main(["zeros", "--a", "0", "--m", "6", "--out", "sub/z.json"])
    assert code == 0 and capsys.readouterr().out == ""
    doc = json.loads((tmp_path / "sub" / "z.json").read_text())
    assert len(doc["data"]["zeros"]) == 2


def test_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "fourterm", "classify", "--b", "-1", "--c", "0"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert json.loads(out.stdout)["data"]["verdict"] == "NotAllReal"
