"""Report rendering: canonical JSON and fixed-column CSV.

Reports are consumed by scripts and used as test fixtures, so rendering is
deterministic: JSON keys are sorted with compact separators, CSV columns
are fixed per command, and the embedded config plus a format-version field
ride along in both formats (as leading # comment lines in CSV).
"""
from __future__ import annotations

import json

FORMAT_VERSION = "1"

CSV_COLUMNS = {
    "fg-profile": ("degree", "count"),
    "tensor-kernel": (
        "degree",
        "dim_S",
        "type1",
        "type2",
        "type3",
        "dim_invariants",
        "dim_coinvariants",
        "dim_kernel",
        "min_generators",
    ),
    "abelian": (
        "p",
        "n",
        "dim_E2_11",
        "dim_invariants",
        "dim_image",
        "obstruction_dim",
        "norm_is_zero",
    ),
    "oracle": (
        "degree",
        "dim_kernel_fast",
        "dim_kernel_oracle",
        "min_generators_fast",
        "min_generators_oracle",
        "agree",
    ),
}


def canonical_json(obj: object) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def _csv_value(v: object) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _csv_rows(report: dict, command: str) -> list[dict]:
    if command == "fg-profile":
        return report["generators"]
    if command == "tensor-kernel":
        rows = []
        for r in report["rows"]:
            flat = dict(r)
            counts = flat.pop("orbit_counts")
            flat["type1"] = counts["type1"]
            flat["type2"] = counts["type2"]
            flat["type3"] = counts["type3"]
            rows.append(flat)
        return rows
    if command == "abelian":
        return [report]
    if command == "oracle":
        return report["rows"]
    raise ValueError(f"no CSV layout for command {command!r}")


def render_csv(report: dict) -> str:
    command = report["config"]["command"]
    columns = CSV_COLUMNS[command]
    lines = [
        f"# format_version={report['format_version']}",
        "# config=" + json.dumps(report["config"], sort_keys=True, separators=(",", ":")),
    ]
    if "status" in report:
        lines.append(f"# status={report['status']}")
    if report.get("abort"):
        lines.append(
            "# abort=" + json.dumps(report["abort"], sort_keys=True, separators=(",", ":"))
        )
    if report.get("one_module_check") is not None:
        verdict = "pass" if report["one_module_check"]["passed"] else "fail"
        lines.append(f"# one_module_check={verdict}")
    lines.append(",".join(columns))
    for row in _csv_rows(report, command):
        lines.append(",".join(_csv_value(row[c]) for c in columns))
    return "\n".join(lines) + "\n"


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return canonical_json(report)
    if fmt == "csv":
        return render_csv(report)
    raise ValueError(f"unknown output format {fmt!r}")
