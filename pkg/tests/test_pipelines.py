from __future__ import annotations

import pytest

from algebras import gamma_u_spec, lambda_ab_spec
from reskernel.gradedalg import algebra_spec_to_dict
from reskernel.pipelines import (
    RunConfig,
    resolve_algebra_spec,
    run_abelian,
    run_fg_profile,
    run_oracle,
    run_tensor_kernel,
)
from reskernel.reports import canonical_json


def spec_doc(truncation: int, p: int = 3) -> dict:
    return algebra_spec_to_dict(gamma_u_spec(truncation, p))


def test_resolve_requires_spec_or_preset():
    with pytest.raises(ValueError):
        resolve_algebra_spec(RunConfig("fg-profile"))
    with pytest.raises(ValueError):
        resolve_algebra_spec(
            RunConfig("fg-profile", preset="thompson-mod-p", spec=spec_doc(4))
        )


def test_resolve_preset_needs_p_and_degree():
    with pytest.raises(ValueError):
        resolve_algebra_spec(RunConfig("fg-profile", preset="thompson-mod-p", p=3))
    spec = resolve_algebra_spec(
        RunConfig("fg-profile", preset="thompson-mod-p", p=3, max_degree=6)
    )
    assert spec.truncation == 6


def test_resolve_flags_override_spec_document():
    cfg = RunConfig("fg-profile", spec=spec_doc(8), max_degree=4, p=5)
    spec = resolve_algebra_spec(cfg)
    assert (spec.p, spec.truncation) == (5, 4)


def test_fg_profile_report():
    report = run_fg_profile(RunConfig("fg-profile", spec=spec_doc(20)))
    assert report["format_version"] == "1"
    assert report["generators"] == [
        {"degree": 2, "count": 1},
        {"degree": 6, "count": 1},
        {"degree": 18, "count": 1},
    ]
    assert report["config"]["algebra"]["p"] == 3


def test_fg_profile_trivial_algebra_is_empty():
    doc = {"p": 3, "truncation": 6, "factors": []}
    report = run_fg_profile(RunConfig("fg-profile", spec=doc))
    assert report["generators"] == []


def test_tensor_kernel_report_ok():
    report = run_tensor_kernel(RunConfig("tensor-kernel", spec=spec_doc(8)))
    assert report["status"] == "ok"
    assert report["abort"] is None
    assert len(report["rows"]) == 9
    assert report["one_module_check"]["passed"]
    by_degree = {r["degree"]: r for r in report["rows"]}
    assert by_degree[6]["dim_kernel"] == 1


def test_tensor_kernel_trivial_algebra():
    doc = {"p": 3, "truncation": 4, "factors": []}
    report = run_tensor_kernel(RunConfig("tensor-kernel", spec=doc))
    gens = {r["degree"]: r["min_generators"] for r in report["rows"] if r["min_generators"]}
    assert gens == {0: 1}


def test_tensor_kernel_budget_abort_keeps_partial_rows():
    report = run_tensor_kernel(
        RunConfig("tensor-kernel", spec=spec_doc(18), memory_budget_mib=1)
    )
    assert report["status"] == "budget_exceeded"
    abort = report["abort"]
    assert abort["degree"] == 12 and abort["budget_mib"] == 1
    assert [r["degree"] for r in report["rows"]] == list(range(12))
    assert report["one_module_check"]["passed"]


def test_tensor_kernel_zero_budget_aborts_before_degree_zero():
    report = run_tensor_kernel(
        RunConfig("tensor-kernel", spec=spec_doc(4), memory_budget_mib=0)
    )
    assert report["status"] == "budget_exceeded"
    assert report["rows"] == []
    assert report["one_module_check"] is None


def test_reports_identical_across_worker_widths():
    base = canonical_json(run_tensor_kernel(RunConfig("tensor-kernel", spec=spec_doc(8))))
    for jobs in (2, 4):
        wide = canonical_json(
            run_tensor_kernel(RunConfig("tensor-kernel", spec=spec_doc(8), jobs=jobs))
        )
        assert wide == base


def test_repeated_runs_are_byte_identical():
    cfg = lambda: RunConfig("tensor-kernel", spec=algebra_spec_to_dict(lambda_ab_spec(4)))
    assert canonical_json(run_tensor_kernel(cfg())) == canonical_json(run_tensor_kernel(cfg()))


def test_abelian_pipeline():
    report = run_abelian(RunConfig("abelian", p=3, n=4))
    assert report["obstruction_dim"] == 4
    assert report["norm_is_zero"] is True
    assert report["config"] == {"command": "abelian", "p": 3, "n": 4}
    with pytest.raises(ValueError):
        run_abelian(RunConfig("abelian", p=3))


def test_oracle_pipeline_agrees():
    report = run_oracle(RunConfig("oracle", spec=spec_doc(6)))
    assert report["status"] == "agree"
    assert all(r["agree"] for r in report["rows"])
    assert all(
        r["dim_kernel_fast"] == r["dim_kernel_oracle"]
        and r["min_generators_fast"] == r["min_generators_oracle"]
        for r in report["rows"]
    )


def test_oracle_pipeline_trivial_algebra_agrees_vacuously():
    doc = {"p": 3, "truncation": 4, "factors": []}
    report = run_oracle(RunConfig("oracle", spec=doc))
    assert report["status"] == "agree"
    assert report["rows"][0]["dim_kernel_fast"] == 1


def test_tensor_kernel_exterior_block_classes_at_degree_three():
    report = run_tensor_kernel(
        RunConfig("tensor-kernel", spec=algebra_spec_to_dict(lambda_ab_spec(3)))
    )
    row3 = next(r for r in report["rows"] if r["degree"] == 3)
    assert row3["orbit_counts"]["type2"] == 2
    assert row3["dim_kernel"] == 2
    assert report["coinvariant_degree_shift"] == 1


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("fg-profile", jobs=0)
    with pytest.raises(ValueError):
        RunConfig("tensor-kernel", memory_budget_mib=-1)
