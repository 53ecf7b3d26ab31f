"""CLI: subcommands, exit codes, JSON schema, determinism."""

import json
import math
import re

import pytest

from oplab.cli import EXIT_ACCURACY, EXIT_DIVERGENCE, EXIT_OK, EXIT_PARAMS, main


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *args):
    code, out, err = run_cli(capsys, *args)
    assert code == EXIT_OK, err
    return json.loads(out)


def test_sharp_norm_command(capsys):
    doc = run_json(capsys, "sharp-norm", "--p", "2", "--a", "0",
                   "--alpha", "0", "--beta", "0", "--gamma", "1")
    assert doc["schema"] == 1
    assert doc["results"]["norm"]["value"] == pytest.approx(math.pi, rel=1e-12)
    assert "tol" in doc["results"]["norm"]


def test_verdict_hilbert_unbounded(capsys):
    doc = run_json(capsys, "verdict", "hilbert", "--p", "2", "--q", "2",
                   "--a", "0", "--b", "0", "--alpha", "0", "--beta", "0", "--gamma", "2")
    assert doc["results"]["verdict"] == "unbounded"
    assert doc["results"]["report"]["relation"]["residual"] == pytest.approx(1.0)


def test_verdict_hilbert_inf_spelling(capsys):
    doc = run_json(capsys, "verdict", "hilbert", "--p", "2", "--q", "inf",
                   "--a", "0", "--alpha", "0.5", "--beta", "0", "--gamma", "1")
    assert doc["results"]["verdict"] == "bounded"
    assert doc["inputs"]["q"] == "inf"  # infinities are spelled out in JSON


def test_verdict_bergman(capsys):
    doc = run_json(capsys, "verdict", "bergman", "--operator", "tplus",
                   "--p", "2", "--q", "2", "--r", "2", "--a", "0", "--b", "0",
                   "--alpha", "0.25", "--beta", "0.25", "--gamma", "1.5")
    assert doc["results"]["verdict"] == "bounded"
    doc = run_json(capsys, "verdict", "bergman", "--operator", "projection",
                   "--p", "2", "--q", "1", "--r", "1", "--a", "0", "--b", "0",
                   "--beta", "0.5")
    assert doc["results"]["verdict"] == "bounded"


def test_certify_and_verify_round_trip(capsys, tmp_path):
    cert_file = tmp_path / "cert.json"
    code, out, err = run_cli(capsys, "certify", "--p", "2", "--q", "2",
                             "--a", "0", "--b", "0", "--alpha", "0",
                             "--beta", "0", "--gamma", "1", "--out", str(cert_file))
    assert code == EXIT_OK
    report = json.loads(out)  # full report on stdout
    assert report["results"]["bound"]["value"] == pytest.approx(
        2.0 * math.sqrt(math.pi), rel=1e-10)  # ~3.5449

    # --out wrote the portable certificate document itself
    doc = json.loads(cert_file.read_text())
    assert doc["kind"] == "schur-certificate"
    vdoc = run_json(capsys, "certify", "verify", "--cert", str(cert_file), "--samples", "10")
    assert vdoc["results"]["verification"]["passed"] is True
    assert vdoc["results"]["max_residual"]["value"] <= 1e-8


def test_certify_verify_corrupted_exit_code(capsys, tmp_path):
    cert_file = tmp_path / "cert.json"
    run_cli(capsys, "certify", "--p", "2", "--q", "2", "--a", "0", "--b", "0",
            "--alpha", "0", "--beta", "0", "--gamma", "1", "--out", str(cert_file))
    doc = json.loads(cert_file.read_text())
    doc["closed_forms"]["m1"] *= 1.001  # silently corrupt the closed form
    cert_file.write_text(json.dumps(doc))
    code, out, err = run_cli(capsys, "certify", "verify", "--cert", str(cert_file),
                             "--samples", "3")
    assert code == EXIT_ACCURACY
    assert "accuracy" in err


def test_certify_missing_args(capsys):
    code, out, err = run_cli(capsys, "certify", "--p", "2")
    assert code == EXIT_PARAMS


def test_certify_unbounded_tuple(capsys):
    code, out, err = run_cli(capsys, "certify", "--p", "2", "--q", "2", "--a", "0",
                             "--b", "0", "--alpha", "0", "--beta", "0", "--gamma", "2")
    assert code == EXIT_PARAMS


def test_estimate(capsys):
    doc = run_json(capsys, "estimate", "--expr", "ind(1,2)", "--p", "2", "--q", "2",
                   "--a", "0", "--b", "0", "--alpha", "0", "--beta", "0", "--gamma", "1")
    assert doc["results"]["verdict"] == "bounded"
    assert doc["results"]["quotient"]["value"] <= doc["results"]["sharp_norm"]["value"]
    applied = doc["results"]["applied"]
    assert applied[1]["x"] == 1.0
    assert applied[1]["Hf"]["value"] == pytest.approx(math.log(1.5), rel=1e-9)


def test_estimate_divergence_exit_code(capsys):
    # the application integral itself diverges: exit code 3
    code, out, err = run_cli(capsys, "estimate", "--expr", "1+0*x", "--p", "2",
                             "--q", "2", "--a", "0", "--b", "0",
                             "--alpha", "0", "--beta", "0", "--gamma", "0.5")
    assert code == EXIT_DIVERGENCE
    assert "divergence" in err


def test_extremal(capsys):
    doc = run_json(capsys, "extremal", "--p", "2", "--a", "0", "--alpha", "0",
                   "--beta", "0", "--gamma", "1", "--xi", "0.1", "--xi", "0.01")
    sweep = doc["results"]["sweep"]
    sharp = doc["results"]["sharp_norm"]["value"]
    assert sweep[0]["quotient"]["value"] < sweep[1]["quotient"]["value"] < sharp


def test_dilate(capsys):
    doc = run_json(capsys, "dilate", "--p", "2", "--q", "2", "--a", "0", "--b", "0",
                   "--alpha", "0", "--beta", "0", "--gamma", "2")
    assert doc["results"]["growth_exponent"]["value"] == pytest.approx(-1.0, abs=0.02)
    assert doc["results"]["predicted"]["value"] == pytest.approx(-1.0)


def test_sweep_csv(capsys):
    code, out, err = run_cli(capsys, "sweep", "--vary", "gamma", "--start", "0.5",
                             "--stop", "1.5", "--num", "5", "--p", "2", "--q", "2",
                             "--a", "0", "--b", "0", "--alpha", "0", "--beta", "0")
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "gamma,bounded,sharp_norm,schur_bound,relation_residual"
    rows = [line.split(",") for line in lines[1:]]
    assert len(rows) == 5
    bounded = [r for r in rows if r[1] == "yes"]
    assert len(bounded) == 1 and float(bounded[0][0]) == 1.0
    assert float(bounded[0][2]) == pytest.approx(math.pi, rel=1e-9)
    assert float(bounded[0][3]) == pytest.approx(2 * math.sqrt(math.pi), rel=1e-9)


def test_bergman_reproduce(capsys):
    doc = run_json(capsys, "bergman", "reproduce", "--nu", "0", "--power", "3",
                   "--tol", "1e-5")
    assert doc["results"]["worst_abs_error"]["value"] <= 1e-4
    assert len(doc["results"]["points"]) == 5


def test_solve_gamma(capsys):
    doc = run_json(capsys, "solve-gamma", "--p", "2", "--q", "3", "--a", "0",
                   "--b", "0.5", "--alpha", "0.2", "--beta", "0.3")
    assert doc["results"]["gamma"]["value"] == pytest.approx(0.2 + 0.3 + 1 - 0.5 + 0.5)


def test_invalid_parameters_exit_code(capsys):
    code, out, err = run_cli(capsys, "sharp-norm", "--p", "2", "--a", "-2",
                             "--alpha", "0", "--beta", "0", "--gamma", "1")
    assert code == EXIT_PARAMS
    assert "parameters" in err


def test_determinism_byte_identical_modulo_elapsed(capsys):
    args = ["verdict", "hilbert", "--p", "2", "--q", "2", "--a", "0", "--b", "0",
            "--alpha", "0", "--beta", "0", "--gamma", "1"]
    _, out1, _ = run_cli(capsys, *args)
    _, out2, _ = run_cli(capsys, *args)
    strip = lambda s: re.sub(r'"elapsed_s": [0-9.e-]+', '"elapsed_s": X', s)
    assert strip(out1) == strip(out2)


def test_tolerance_precedence(capsys, monkeypatch):
    # flag > environment variable > default
    monkeypatch.setenv("OPLAB_TOL", "1e-4")
    doc = run_json(capsys, "estimate", "--expr", "ind(1,2)", "--p", "2", "--q", "2",
                   "--a", "0", "--b", "0", "--alpha", "0", "--beta", "0", "--gamma", "1")
    assert doc["tolerances"]["tol"] == 1e-4
    doc = run_json(capsys, "estimate", "--expr", "ind(1,2)", "--p", "2", "--q", "2",
                   "--a", "0", "--b", "0", "--alpha", "0", "--beta", "0", "--gamma", "1",
                   "--tol", "1e-6")
    assert doc["tolerances"]["tol"] == 1e-6
    monkeypatch.delenv("OPLAB_TOL")
    doc = run_json(capsys, "estimate", "--expr", "ind(1,2)", "--p", "2", "--q", "2",
                   "--a", "0", "--b", "0", "--alpha", "0", "--beta", "0", "--gamma", "1")
    assert doc["tolerances"]["tol"] == 1e-10
