import json
import subprocess
import sys

import pytest

from psg import conditioning
from psg.cli import main
from psg.quadgauss import GaussTerm, QuadGaussSum
from psg.verify import run_verify


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_wigner_reports_reference_minimum(capsys):
    code, out, err = run(["wigner", "--grid=-2:2:41"], capsys)
    assert code == 0
    assert out.startswith("# psg 0.1.0 wigner ")
    assert out.splitlines()[1] == "x,p,W"
    assert len(out.splitlines()) == 2 + 41 * 41
    assert "min W = -0.52" in err
    assert "x = 0, p = 0" in err


def test_wigner_file_output_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        code, out, _ = run(["wigner", "--eta", "0.75", "--xi", "0.9", "--grid=-3:3:31", "--out", str(path)], capsys)
        assert code == 0
        assert "min W" in out
    assert a.read_bytes() == b.read_bytes()


def test_fidelity_ideal_sweep(capsys):
    code, out, _ = run(["fidelity", "--optimize-alpha", "--T-range", "0.8:0.999:5"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("# psg 0.1.0 fidelity")
    header = lines[1].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[2:]]
    assert len(rows) == 5
    assert all(float(r["fidelity"]) > 0.99 for r in rows)
    assert float(rows[0]["alpha_star"]) == pytest.approx(1.02, abs=0.03)


def test_fidelity_threshold_crossing(capsys):
    code, _, err = run(["fidelity", "--optimize-alpha", "--detector", "threshold",
                        "--T-range", "0.8:0.999:21"], capsys)
    assert code == 0
    line = next(l for l in err.splitlines() if "crosses 0.9" in l)
    assert float(line.rsplit("=", 1)[1]) == pytest.approx(0.87, abs=0.02)


def test_thresholds_json(capsys):
    code, out, _ = run(["thresholds", "--T", "0.88"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["input"]["pure"] is True
    assert rep["T_min_single"]["formula"] == 0.0
    assert rep["T_min_threshold"]["formula"] == pytest.approx(1 / 3, abs=1e-12)
    assert rep["T_min_threshold"]["bisection"] == pytest.approx(1 / 3, abs=1e-6)
    assert rep["eta_min"]["bisection"] == pytest.approx(0.534, abs=0.002)


def test_thresholds_mixed_input(capsys):
    code, out, _ = run(["thresholds", "--A", "0.5", "--B", "2.5"], capsys)
    assert code == 0
    rep = json.loads(out)
    assert rep["input"]["pure"] is False
    assert rep["T_min_single"]["bisection"] == pytest.approx(rep["T_min_single"]["formula"], abs=1e-6)


def test_exit_code_degenerate_splitter(capsys):
    code, _, err = run(["wigner", "--T", "1.0"], capsys)
    assert code == 2
    assert "DegenerateSplitter" in err


def test_exit_code_zero_probability(capsys):
    code, _, err = run(["wigner", "--exp2s", "1.0", "--detector", "ideal"], capsys)
    assert code == 3


def test_exit_code_not_squeezed(capsys):
    code, _, err = run(["thresholds", "--exp2s", "1.0"], capsys)
    assert code == 4


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "psg.cli", "wigner", "--grid", "bad"],
                          capture_output=True, text=True)
    assert proc.returncode == 2


def test_verify_command(tmp_path, capsys):
    path = tmp_path / "v.json"
    code, out, _ = run(["verify", "--json", str(path)], capsys)
    assert code == 0
    rep = json.loads(path.read_text())
    assert rep["ok"] is True


def test_verify_catches_sign_mutation(monkeypatch):
    original = conditioning.subtract_single_photon

    def mutated(V):
        good = original(V)
        t = good.char.terms[0]
        poly = t.poly.copy()
        poly[2, 0] = -poly[2, 0]
        return type(good)(QuadGaussSum((GaussTerm(t.coeff, poly, t.a, t.b),)),
                          good.success_prob, good.detector, good.closed_form_prob)

    monkeypatch.setattr(conditioning, "subtract_single_photon", mutated)
    report = run_verify()
    assert not report.ok
    assert report.failures
