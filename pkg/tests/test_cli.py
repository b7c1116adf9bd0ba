import csv
import json

import numpy as np
import pytest

from phloewner.cli import main
from phloewner.ph import load_ph, reconstruct
from phloewner.state_space import load_model, relative_error
from phloewner.zoo import make_rlc5


def run(*args):
    return main([str(a) for a in args])


@pytest.fixture
def rlc5_files(tmp_path):
    model_path = tmp_path / "rlc5.json"
    assert run("models", "rlc5", "-o", model_path) == 0
    samples = tmp_path / "samples.csv"
    assert run("sample", model_path, "--grid", "0.1,1000,20", "-o", samples) == 0
    d_path = tmp_path / "d.json"
    d_path.write_text("[[2.0]]")
    return tmp_path, model_path, samples, d_path


def test_models_listing(capsys):
    assert run("models") == 0
    assert capsys.readouterr().out.split() == ["analytic", "rlc5", "ladder"]


def test_sample_csv_layout(rlc5_files):
    _, _, samples, _ = rlc5_files
    rows = list(csv.reader(samples.open()))
    assert rows[0] == ["omega", "re_Z11", "im_Z11"]
    assert len(rows) == 21


def test_identify_and_sv(rlc5_files):
    tmp, _, samples, d_path = rlc5_files
    out, sv = tmp / "m.json", tmp / "sv.csv"
    assert run("identify", samples, "--tol", "1e-10", "--D", f"given:{d_path}", "-o", out, "--sv", sv) == 0
    model = load_model(out)
    assert model.n == 5
    assert relative_error(model, make_rlc5(), np.logspace(-1, 3, 20)).max() <= 1e-6
    assert sv.read_text().splitlines()[0] == "index,value"


def test_ph_command_and_determinism(rlc5_files):
    tmp, _, samples, d_path = rlc5_files
    outputs = []
    for k in range(2):
        out, diag = tmp / f"ph{k}.json", tmp / f"diag{k}.json"
        assert run("ph", samples, "--tol", "1e-10", "--D", f"given:{d_path}", "-o", out, "--diag", diag) == 0
        outputs.append((out.read_bytes(), diag.read_bytes()))
    assert outputs[0] == outputs[1]
    ph = load_ph(tmp / "ph0.json")
    assert ph.n == 5
    assert json.loads((tmp / "diag0.json").read_text())["order"] == 5
    assert relative_error(reconstruct(ph), make_rlc5(), np.logspace(-1, 3, 20)).max() <= 1e-6


def test_ph_band_outside_samples_exits_2(rlc5_files, capsys):
    tmp, _, samples, _ = rlc5_files
    assert run("ph", samples, "--band", "1e6,1e7", "-o", tmp / "x.json") == 2
    assert "EmptyBand" in capsys.readouterr().err


def test_zeros_command(rlc5_files):
    tmp, model_path, _, _ = rlc5_files
    out = tmp / "z.csv"
    assert run("zeros", model_path, "--rhp", "-o", out) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["re", "im", "re_r1", "im_r1"]
    assert len(rows) == 6 and all(float(r[0]) > 0 for r in rows[1:])


def test_validate_model_and_ph(rlc5_files, capsys):
    tmp, model_path, samples, d_path = rlc5_files
    x_path = tmp / "x.json"
    x_path.write_text(json.dumps({"X": np.eye(5).tolist()}))
    report = tmp / "report.json"
    assert run("validate", model_path, "--certificate", x_path, "--sweep", "0.01,1e4,30", "-o", report) == 0
    rep = json.loads(report.read_text())
    assert rep["sweep"]["min"] > 0 and rep["certificate"]["verdict"] in {"strict", "nonstrict", "invalid"}

    ph_path = tmp / "ph.json"
    assert run("ph", samples, "--tol", "1e-10", "--D", f"given:{d_path}", "-o", ph_path) == 0
    assert run("validate", ph_path, "--certificate", tmp / "i.json") == 2  # missing file
    (tmp / "i.json").write_text(json.dumps(np.eye(5).tolist()))
    capsys.readouterr()
    assert run("validate", ph_path, "--certificate", tmp / "i.json") == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["ph_violations"] == [] and rep["certificate"]["verdict"] == "nonstrict"
    assert rep["lambda_min_dissipation"] == pytest.approx(0.0, abs=1e-8)


def test_dof_command(capsys):
    assert run("dof", "--n", 5, "--m", 2, "--rank", 2) == 0
    assert capsys.readouterr().out.strip() == "24"
    assert run("dof", "--n", 5, "--m", 1) == 0
    assert capsys.readouterr().out.strip() == "10"
    assert run("dof", "--n", -1, "--m", 1) == 2


def test_bode_command(rlc5_files):
    tmp, model_path, _, _ = rlc5_files
    out = tmp / "bode.csv"
    assert run("bode", model_path, "--grid", "0.1,1000,7", "-o", out) == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["omega", "mag_Z11"] and len(rows) == 8


def test_bad_inputs_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run("zeros", bad, "-o", tmp_path / "z.csv") == 2
    assert run("bode", tmp_path / "missing.json", "--grid", "1,2,3", "-o", tmp_path / "b.csv") == 2
    model = tmp_path / "m.json"
    run("models", "analytic", "-o", model)
    assert run("bode", model, "--grid", "2,1,3", "-o", tmp_path / "b.csv") == 2
    assert run("models", "nonexistent") == 2


def test_numerical_failure_exits_3(tmp_path):
    # pole on the imaginary axis: sampling hits a singular resolvent
    model = tmp_path / "osc.json"
    model.write_text(json.dumps({"A": [[0.0, 1.0], [-1.0, 0.0]], "B": [[1.0], [0.0]],
                                 "C": [[1.0, 0.0]], "D": [[1.0]]}))
    assert run("sample", model, "--grid", "1,1,1", "-o", tmp_path / "s.csv") == 2
    assert run("sample", model, "--grid", "0.5,1,2", "--scale", "lin", "-o", tmp_path / "s.csv") == 3
