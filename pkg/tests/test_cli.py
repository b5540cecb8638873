"""CLI subcommands, exit codes, and output determinism."""

import json

import numpy as np
import pytest

from rho_radii.cli import main
from rho_radii.dilation import build_shift_unitary_rho_dilation, nilpotent_jump
from rho_radii.pencil import OperatorTuple
from rho_radii.serialize import embedding_to_json, matrix_to_json, tuple_to_json


@pytest.fixture
def eye3(tmp_path):
    p = tmp_path / "eye3.json"
    p.write_text(json.dumps(matrix_to_json(np.eye(3))))
    return str(p)


@pytest.fixture
def nilp(tmp_path):
    p = tmp_path / "nilp.json"
    p.write_text(json.dumps(matrix_to_json(np.array([[0.0, 1.0], [0.0, 0.0]]))))
    return str(p)


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_radius_identity(eye3, capsys):
    code, out, _ = _run(capsys, ["radius", "--rho", "2", "--input", eye3])
    assert code == 0
    rep = json.loads(out)
    assert rep["lo"] == pytest.approx(1.0, abs=2e-6)
    assert rep["hi"] == pytest.approx(1.0, abs=2e-6)


def test_membership_contraction(nilp, capsys):
    code, out, _ = _run(capsys, ["membership", "--rho", "1", "--input", nilp])
    assert code == 0
    verdict = json.loads(out)
    assert verdict["decision"] == "In"
    assert verdict["margin"] >= -1e-9


def test_numrad(nilp, capsys):
    code, out, _ = _run(capsys, ["numrad", "--input", nilp])
    assert code == 0
    assert json.loads(out)["numerical_radius"] == pytest.approx(0.5, abs=1e-9)


def test_membership_tuple_input(tmp_path, capsys):
    t = OperatorTuple((0.2 * np.eye(2), 0.2 * np.array([[0, 1], [0, 0]])))
    p = tmp_path / "pair.json"
    p.write_text(json.dumps(tuple_to_json(t)))
    code, out, _ = _run(capsys, ["membership", "--rho", "2", "--input", str(p)])
    assert code == 0
    assert json.loads(out)["decision"] == "In"


def test_verify_dilation_sym(tmp_path, capsys):
    rho = 2.0
    big, e = build_shift_unitary_rho_dilation(rho, 8)
    small = OperatorTuple((nilpotent_jump(rho),))
    (tmp_path / "small.json").write_text(json.dumps(tuple_to_json(small)))
    (tmp_path / "big.json").write_text(json.dumps(tuple_to_json(big)))
    (tmp_path / "e.json").write_text(json.dumps(embedding_to_json(e)))
    code, out, _ = _run(capsys, [
        "verify-dilation", "--mode", "sym",
        "--small", str(tmp_path / "small.json"),
        "--big", str(tmp_path / "big.json"),
        "--embedding", str(tmp_path / "e.json"),
        "--rho", "2", "--nmax", "6",
    ])
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_repro_passing_experiment(capsys):
    code, out, _ = _run(capsys, ["repro", "--name", "thm51", "--rho", "2"])
    assert code == 0
    report = json.loads(out)
    assert all(c["pass"] for c in report["claims"])


def test_repro_output_file_and_determinism(tmp_path, capsys):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["repro", "--name", "scalar-boundary", "--output", str(out1)]) == 0
    assert main(["repro", "--name", "scalar-boundary", "--output", str(out2)]) == 0
    a = json.loads(out1.read_text())
    b = json.loads(out2.read_text())
    a.pop("wall_time_s")
    b.pop("wall_time_s")
    assert a == b


def test_sweep_csv(nilp, capsys):
    code, out, _ = _run(capsys, [
        "sweep", "--rho-from", "1", "--rho-to", "2", "--steps", "3", "--input", nilp,
    ])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "rho,w_rho"
    assert len(lines) == 4
    rows = [line.split(",") for line in lines[1:]]
    # w_rho of the nilpotent jump is 1/rho
    for rho_s, w_s in rows:
        assert float(w_s) == pytest.approx(1.0 / float(rho_s), abs=1e-4)


def test_exit_code_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"rows\": 1}")
    code, out, err = _run(capsys, ["membership", "--rho", "1", "--input", str(bad)])
    assert code == 2
    assert json.loads(err)["error"] == "input"


def test_exit_code_missing_file(capsys):
    code, _, err = _run(capsys, ["numrad", "--input", "/nonexistent.json"])
    assert code == 2
    assert json.loads(err)["error"] == "input"


def test_exit_code_capacity_error(tmp_path, capsys):
    rho = 1.0
    big, e = build_shift_unitary_rho_dilation(rho, 8)
    small = OperatorTuple((nilpotent_jump(rho),))
    (tmp_path / "s.json").write_text(json.dumps(tuple_to_json(small)))
    (tmp_path / "b.json").write_text(json.dumps(tuple_to_json(big)))
    (tmp_path / "e.json").write_text(json.dumps(embedding_to_json(e)))
    code, _, err = _run(capsys, [
        "verify-dilation", "--mode", "uniform",
        "--small", str(tmp_path / "s.json"), "--big", str(tmp_path / "b.json"),
        "--embedding", str(tmp_path / "e.json"), "--rho", "1", "--nmax", "9",
    ])
    assert code == 3
    assert json.loads(err)["error"] == "capacity"


def test_exit_code_bad_sweep_range(nilp, capsys):
    code, _, err = _run(capsys, [
        "sweep", "--rho-from", "2", "--rho-to", "1", "--steps", "3", "--input", nilp,
    ])
    assert code == 2


def test_threads_env_rejected_when_malformed(nilp, capsys, monkeypatch):
    monkeypatch.setenv("RHO_RADII_THREADS", "lots")
    code, _, err = _run(capsys, ["numrad", "--input", nilp])
    assert code == 2


def test_threads_env_accepted(nilp, capsys, monkeypatch):
    monkeypatch.setenv("RHO_RADII_THREADS", "1")
    code, out, _ = _run(capsys, ["numrad", "--input", nilp])
    assert code == 0
