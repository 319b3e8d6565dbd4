"""The four computation pipelines behind the service endpoints.

Each pipeline takes a RunConfig and returns a fully JSON-shaped report
dict embedding the mathematical inputs and a format-version field. The
worker width is execution plumbing, not a mathematical input, so it is
excluded from the embedded config: reports must be byte-identical across
parallelism widths.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .abelian import AbelianExampleConfig, abelian_report
from .cyclic import TensorPower
from .gradedalg import (
    AlgebraSpec,
    algebra_spec_from_dict,
    algebra_spec_to_dict,
    build_algebra,
    ideal_minimal_generators,
    preset_spec,
)
from .reports import FORMAT_VERSION
from .restriction import COHOMOLOGICAL_SHIFT, TwoColumnModel, oracle_kernel_rows

DEFAULT_MEMORY_BUDGET_MIB = 4096


@dataclass
class RunConfig:
    command: str
    p: int | None = None
    max_degree: int | None = None
    n: int | None = None
    preset: str | None = None
    spec: dict | None = None
    jobs: int = 1
    memory_budget_mib: int = DEFAULT_MEMORY_BUDGET_MIB

    def __post_init__(self) -> None:
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.memory_budget_mib < 0:
            raise ValueError("memory budget must be >= 0")


def resolve_algebra_spec(cfg: RunConfig) -> AlgebraSpec:
    """Expand preset or parse the spec document; CLI flags override."""
    if cfg.preset is not None and cfg.spec is not None:
        raise ValueError("give either a preset or a spec, not both")
    if cfg.preset is not None:
        if cfg.p is None or cfg.max_degree is None:
            raise ValueError("a preset needs explicit p and max degree")
        return preset_spec(cfg.preset, cfg.p, cfg.max_degree)
    if cfg.spec is None:
        raise ValueError("an algebra spec or preset is required")
    spec = algebra_spec_from_dict(cfg.spec)
    p = cfg.p if cfg.p is not None else spec.p
    max_degree = cfg.max_degree if cfg.max_degree is not None else spec.truncation
    if (p, max_degree) != (spec.p, spec.truncation):
        spec = AlgebraSpec(p, max_degree, spec.factors)
    return spec


def _config_payload(cfg: RunConfig, spec: AlgebraSpec | None) -> dict:
    out: dict = {"command": cfg.command}
    if spec is not None:
        out["p"] = spec.p
        out["max_degree"] = spec.truncation
        out["preset"] = cfg.preset
        out["algebra"] = algebra_spec_to_dict(spec)
    else:
        out["p"] = cfg.p
    if cfg.n is not None:
        out["n"] = cfg.n
    if cfg.command == "tensor-kernel":
        out["memory_budget_mib"] = cfg.memory_budget_mib
    return out


def run_fg_profile(cfg: RunConfig) -> dict:
    spec = resolve_algebra_spec(cfg)
    algebra = build_algebra(spec)
    profile = ideal_minimal_generators(algebra)
    return {
        "format_version": FORMAT_VERSION,
        "config": _config_payload(cfg, spec),
        "generators": [
            {"degree": d, "count": c} for d, c in sorted(profile.counts.items())
        ],
    }


def run_tensor_kernel(cfg: RunConfig) -> dict:
    spec = resolve_algebra_spec(cfg)
    algebra = build_algebra(spec)
    tensor = TensorPower(algebra)
    model = TwoColumnModel(tensor)

    degrees: list[int] = []
    abort: dict | None = None
    for d in range(spec.truncation + 1):
        estimate = tensor.estimate_degree_mib(d)
        if estimate > cfg.memory_budget_mib:
            abort = {
                "degree": d,
                "estimated_mib": round(estimate, 3),
                "budget_mib": cfg.memory_budget_mib,
            }
            break
        degrees.append(d)

    if cfg.jobs > 1 and degrees:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            futures = {d: pool.submit(model.build_degree_data, d) for d in degrees}
            for d in degrees:
                model.adopt_degree_data(futures[d].result())

    rows: list[dict] = []
    one_module = None
    if degrees:
        top = degrees[-1]
        rows = model.kernel_generator_profile(top)
        one_module = model.one_module_check(top)
    return {
        "format_version": FORMAT_VERSION,
        "config": _config_payload(cfg, spec),
        "status": "budget_exceeded" if abort else "ok",
        "abort": abort,
        # all degrees are internal; coinvariant classes live one
        # cohomological degree higher, uniformly
        "coinvariant_degree_shift": COHOMOLOGICAL_SHIFT,
        "min_generators_framing": (
            "min_generators counts minimal generators of the restriction kernel "
            "as a module over the invariant subring; in the two-column product "
            "model this equals its minimal generator count as an ideal"
        ),
        "rows": rows,
        "one_module_check": one_module,
    }


def run_abelian(cfg: RunConfig) -> dict:
    if cfg.p is None or cfg.n is None:
        raise ValueError("the abelian pipeline needs p and n")
    report = abelian_report(AbelianExampleConfig(cfg.p, cfg.n))
    return {
        "format_version": FORMAT_VERSION,
        "config": _config_payload(cfg, None),
        **report,
    }


def run_oracle(cfg: RunConfig) -> dict:
    spec = resolve_algebra_spec(cfg)
    algebra = build_algebra(spec)
    tensor = TensorPower(algebra)
    model = TwoColumnModel(tensor)
    fast = model.kernel_generator_profile(spec.truncation)
    brute = oracle_kernel_rows(tensor, spec.truncation)
    rows = []
    all_agree = True
    for f, o in zip(fast, brute):
        agree = (
            f["dim_kernel"] == o["dim_kernel"]
            and f["min_generators"] == o["min_generators"]
        )
        all_agree = all_agree and agree
        rows.append(
            {
                "degree": f["degree"],
                "dim_kernel_fast": f["dim_kernel"],
                "dim_kernel_oracle": o["dim_kernel"],
                "min_generators_fast": f["min_generators"],
                "min_generators_oracle": o["min_generators"],
                "agree": agree,
            }
        )
    return {
        "format_version": FORMAT_VERSION,
        "config": _config_payload(cfg, spec),
        "status": "agree" if all_agree else "mismatch",
        "rows": rows,
    }
