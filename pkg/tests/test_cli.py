from __future__ import annotations

import json

import pytest

from algebras import gamma_u_spec, lambda_ab_spec
from reskernel.cli import run_cli
from reskernel.gradedalg import algebra_spec_to_dict


@pytest.fixture
def gamma_spec_file(tmp_path):
    def write(truncation: int, p: int = 3) -> str:
        path = tmp_path / f"gamma_{p}_{truncation}.json"
        path.write_text(json.dumps(algebra_spec_to_dict(gamma_u_spec(truncation, p))))
        return str(path)

    return write


def test_fg_profile_preset_to_file(tmp_path):
    out = tmp_path / "profile.json"
    code = run_cli(
        ["fg-profile", "--preset", "thompson-mod-p", "--p", "3", "--max-degree", "20",
         "--out", str(out)]
    )
    assert code == 0
    report = json.loads(out.read_text())
    assert {g["degree"]: g["count"] for g in report["generators"]} == {1: 2, 2: 1, 6: 1, 18: 1}


def test_fg_profile_stdout_json(capsys, gamma_spec_file):
    assert run_cli(["fg-profile", "--spec", gamma_spec_file(8)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["generators"] == [{"count": 1, "degree": 2}, {"count": 1, "degree": 6}]


def test_fg_profile_csv_layout(capsys, gamma_spec_file):
    assert run_cli(["fg-profile", "--spec", gamma_spec_file(8), "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "# format_version=1"
    assert lines[1].startswith("# config=")
    assert lines[2] == "degree,count"
    assert lines[3:] == ["2,1", "6,1"]


def test_tensor_kernel_csv_columns(capsys, gamma_spec_file):
    assert run_cli(["tensor-kernel", "--spec", gamma_spec_file(6), "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    header = next(l for l in lines if not l.startswith("#"))
    assert header == (
        "degree,dim_S,type1,type2,type3,dim_invariants,dim_coinvariants,"
        "dim_kernel,min_generators"
    )
    assert "# one_module_check=pass" in lines
    assert lines[-1] == "6,165,0,1,18,19,19,1,1"


def test_abelian_command(capsys):
    assert run_cli(["abelian", "--p", "5", "--n", "2"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["obstruction_dim"] == 2


def test_usage_missing_spec_and_preset(capsys):
    assert run_cli(["fg-profile"]) == 1
    assert "required" in capsys.readouterr().err


def test_usage_both_spec_and_preset(gamma_spec_file, capsys):
    code = run_cli(
        ["fg-profile", "--spec", gamma_spec_file(4), "--preset", "thompson-mod-p"]
    )
    assert code == 1
    assert "not both" in capsys.readouterr().err


def test_usage_malformed_spec_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run_cli(["fg-profile", "--spec", str(bad)]) == 1
    assert "malformed spec file" in capsys.readouterr().err


def test_usage_missing_spec_file(capsys):
    assert run_cli(["fg-profile", "--spec", "/nonexistent/spec.json"]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_usage_even_prime(capsys):
    assert run_cli(["abelian", "--p", "2", "--n", "1"]) == 1
    assert "odd prime" in capsys.readouterr().err


def test_usage_unknown_flag(capsys):
    assert run_cli(["fg-profile", "--frobnicate"]) == 1


def test_budget_abort_exit_code_with_partial_report(tmp_path, gamma_spec_file, capsys):
    out = tmp_path / "partial.json"
    code = run_cli(
        ["tensor-kernel", "--spec", gamma_spec_file(18), "--memory-budget", "1",
         "--out", str(out)]
    )
    assert code == 3
    assert "budget abort" in capsys.readouterr().err
    report = json.loads(out.read_text())
    assert report["status"] == "budget_exceeded"
    assert len(report["rows"]) == 12


def test_oracle_command_agreement(tmp_path):
    spec = tmp_path / "lambda.json"
    spec.write_text(json.dumps(algebra_spec_to_dict(lambda_ab_spec(4))))
    out = tmp_path / "oracle.json"
    assert run_cli(["oracle", "--spec", str(spec), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["status"] == "agree"


def test_output_identical_across_jobs(tmp_path, gamma_spec_file):
    spec = gamma_spec_file(8)
    outs = []
    for jobs in ("1", "3"):
        out = tmp_path / f"k{jobs}.json"
        assert run_cli(["tensor-kernel", "--spec", spec, "--jobs", jobs, "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_internal_check_failure_exits_2(monkeypatch, gamma_spec_file, capsys):
    from reskernel.errors import InternalCheckError
    from reskernel.service import app as app_module

    def boom(cfg):
        raise InternalCheckError("simulated cross-check divergence")

    monkeypatch.setattr(app_module, "run_fg_profile", boom)
    assert run_cli(["fg-profile", "--spec", gamma_spec_file(4)]) == 2
    assert "internal error" in capsys.readouterr().err


def test_oracle_mismatch_exits_2(monkeypatch, gamma_spec_file, capsys):
    from reskernel.service import app as app_module

    fake = {
        "format_version": "1",
        "config": {"command": "oracle", "p": 3, "max_degree": 2, "preset": None,
                   "algebra": {"p": 3, "truncation": 2, "factors": []}},
        "status": "mismatch",
        "rows": [
            {
                "degree": 2,
                "dim_kernel_fast": 1,
                "dim_kernel_oracle": 0,
                "min_generators_fast": 1,
                "min_generators_oracle": 0,
                "agree": False,
            }
        ],
    }
    monkeypatch.setattr(app_module, "run_oracle", lambda cfg: fake)
    assert run_cli(["oracle", "--spec", gamma_spec_file(2)]) == 2
    assert "oracle mismatch at degree 2" in capsys.readouterr().err


def test_help_exits_zero(capsys):
    assert run_cli(["--help"]) == 0
    assert "fg-profile" in capsys.readouterr().out
