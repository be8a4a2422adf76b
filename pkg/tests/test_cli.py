"""Command-line interface: outputs, formats, exit codes."""

import json
import math

import pytest

from combenergy import cli
from combenergy.core import BRANCH_GENERIC


def _run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_check_feasible_json(capsys):
    code, out, _ = _run(
        capsys, "check", "--r", "1.5", "--R", "1.25", "--a", "1", "--b", "1", "--lambda", "2"
    )
    assert code == 0
    data = json.loads(out)
    assert data["feasible"] is True
    assert data["bound"] == 2.0
    assert data["margin"] == pytest.approx(0.5)


def test_check_infeasible_exits_three_with_bound(capsys):
    code, out, _ = _run(
        capsys, "check", "--r", "2.5", "--R", "1.25", "--a", "1", "--b", "1", "--lambda", "0"
    )
    assert code == 3
    data = json.loads(out)
    assert data["feasible"] is False
    assert data["bound"] == 2.0


def test_solve_json_fields_and_roundtrip(capsys):
    code, out, _ = _run(
        capsys, "solve", "--r", "1.5", "--R", "1.25", "--a", "1", "--b", "1", "--lambda", "2"
    )
    assert code == 0
    data = json.loads(out)
    assert data["branch"] == BRANCH_GENERIC
    assert abs(data["alpha"] - (-0.5376)) <= 1e-10
    assert data["phi_residual"] <= 1e-12
    assert data["endpoint_error"] <= 1e-10
    # serialized floats parse back to the exact computed double (<= 1 ulp)
    from combenergy import AnnulusPair, EnergyParams
    from combenergy.alpha import solve_alpha

    direct = solve_alpha(AnnulusPair(1.5, 1.25), EnergyParams(1.0, 1.0, 2.0))
    assert data["alpha"] == direct


def test_solve_infeasible_exit_code(capsys):
    code, out, err = _run(
        capsys, "solve", "--r", "3.0", "--R", "1.25", "--a", "1", "--b", "1", "--lambda", "2"
    )
    assert code == 3
    assert "bound" in err
    assert "2" in err


def test_validation_error_exit_code(capsys):
    code, _, err = _run(
        capsys, "solve", "--r", "0.9", "--R", "1.25", "--a", "1", "--b", "1", "--lambda", "2"
    )
    assert code == 2
    assert "error" in err


def test_numerical_refusal_exit_code(capsys):
    # lambda inside the open refusal window around 1 is a numerical-domain error
    code, _, err = _run(
        capsys,
        "solve",
        "--r", "1.5", "--R", "1.25", "--a", "1", "--b", "1", "--lambda", "1.0000000000001",
    )
    assert code == 4
    assert "error" in err


def test_energy_lambda_one_example(capsys):
    code, out, _ = _run(
        capsys,
        "energy",
        "--r", "2.718281828459045",
        "--R", "7.38905609893065",
        "--a", "1", "--b", "1", "--lambda", "1",
    )
    assert code == 0
    data = json.loads(out)
    assert data["closed_form"]["value"] == pytest.approx(10.0 * math.pi, abs=1e-5)
    assert data["relative_gap"] <= 1e-8


def test_verify_passes_and_prints_thresholds(capsys):
    code, out, _ = _run(
        capsys, "verify", "--r", "1.5", "--R", "1.25", "--a", "1", "--b", "1", "--lambda", "2"
    )
    assert code == 0
    data = json.loads(out)
    names = [c["name"] for c in data["checks"]]
    assert names == [
        "euler_lagrange_residual",
        "first_integral_drift",
        "shooting_endpoint",
        "duality_gap",
    ]
    assert all(c["pass"] for c in data["checks"])
    assert all(c["threshold"] > 0 for c in data["checks"])
    assert data["all_pass"] is True


def test_oracle_subcommand(capsys):
    code, out, _ = _run(
        capsys,
        "oracle",
        "--r", "1.5", "--R", "1.25", "--a", "1", "--b", "1", "--lambda", "2",
        "--n", "129", "--k", "20",
    )
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 129
    assert data["sup_norm_gap"] <= 1e-3
    assert data["min_perturbation_delta"] >= -1e-9
    assert data["all_pass"] is True


def test_table_and_csv_formats(capsys):
    code, out, _ = _run(
        capsys,
        "check",
        "--r", "1.5", "--R", "1.25", "--a", "1", "--b", "1", "--lambda", "2",
        "--format", "table",
    )
    assert code == 0
    assert "feasible" in out and "true" in out
    code, out, _ = _run(
        capsys,
        "check",
        "--r", "1.5", "--R", "1.25", "--a", "1", "--b", "1", "--lambda", "2",
        "--format", "csv",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("feasible,")
    assert lines[1].startswith("true,")


def test_sweep_csv(tmp_path, capsys):
    cfg = tmp_path / "configs.jsonl"
    cfg.write_text(
        "\n".join(
            [
                json.dumps({"r": 1.5, "R": 1.25, "a": 1.0, "b": 1.0, "lambda": 2.0}),
                json.dumps({"r": 3.0, "R": 1.25, "a": 1.0, "b": 1.0, "lambda": 2.0}),
                json.dumps(
                    {"r": 2.718281828459045, "R": 7.38905609893065, "a": 1.0, "b": 1.0, "lambda": 1.0}
                ),
            ]
        )
        + "\n"
    )
    out_path = tmp_path / "rows.csv"
    code = cli.main(["sweep", "--config", str(cfg), "--out", str(out_path)])
    capsys.readouterr()
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "r,R,a,b,lambda,feasible,alpha,energy_closed,energy_quad,el_residual_max"
    assert len(lines) == 4
    row1 = lines[1].split(",")
    assert row1[5] == "true"
    assert float(row1[6]) == pytest.approx(-0.5376, abs=1e-10)
    assert float(row1[7]) == pytest.approx(2.6640705702441446, rel=1e-12)
    row2 = lines[2].split(",")
    assert row2[5] == "false"
    assert row2[6] == row2[7] == row2[8] == row2[9] == ""
    row3 = lines[3].split(",")
    assert row3[5] == "true"
    assert float(row3[6]) == pytest.approx(3.0, abs=1e-10)
    assert float(row3[7]) == pytest.approx(10.0 * math.pi, rel=1e-10)


def test_sweep_parallel_matches_serial(tmp_path, capsys):
    cfg = tmp_path / "configs.jsonl"
    rows = [
        {"r": 1.5, "R": 1.25, "a": 1.0, "b": 1.0, "lambda": 2.0},
        {"r": 1.2, "R": 1.8, "a": 0.7, "b": 1.3, "lambda": 0.0},
        {"r": 1.3, "R": 1.2, "a": 1.1, "b": 0.9, "lambda": 3.0},
        {"r": 4.0, "R": 1.1, "a": 1.0, "b": 1.0, "lambda": 2.0},
    ]
    cfg.write_text("".join(json.dumps(x) + "\n" for x in rows))
    serial = tmp_path / "serial.csv"
    parallel = tmp_path / "parallel.csv"
    assert cli.main(["sweep", "--config", str(cfg), "--out", str(serial)]) == 0
    assert cli.main(["sweep", "--config", str(cfg), "--out", str(parallel), "--jobs", "4"]) == 0
    capsys.readouterr()
    assert serial.read_text() == parallel.read_text()


def test_export_writes_profile(tmp_path, capsys):
    out_path = tmp_path / "profile.csv"
    code, out, _ = _run(
        capsys,
        "export",
        "--r", "1.5", "--R", "1.25", "--a", "1", "--b", "1", "--lambda", "2",
        "--n", "17",
        "--out", str(out_path),
    )
    assert code == 0
    meta = json.loads(out)
    assert meta["out"] == str(out_path)
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "t,H,Hdot"
    assert len(lines) == 18
    last = [float(v) for v in lines[-1].split(",")]
    assert last[0] == pytest.approx(1.5, rel=1e-15)
    assert last[1] == pytest.approx(1.25, abs=1e-10)
