"""Command-line front door: a thin client over the service endpoints.

Every command marshals its flags into a request, POSTs it to the service
(in-process by default, or a remote instance via --server-url), renders
the response as JSON or CSV, and maps the outcome to exit codes:

    0  success
    1  usage error (bad flags, malformed spec file, rejected inputs)
    2  internal assertion failure or oracle mismatch
    3  memory budget abort (partial rows still emitted)
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx

from .reports import render_report


def _client(server_url: str | None) -> httpx.Client:
    if server_url:
        return httpx.Client(base_url=server_url, timeout=None)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # starlette deprecation chatter on import
        from fastapi.testclient import TestClient

    from .service.app import create_app

    return TestClient(create_app(), raise_server_exceptions=False)


def _algebra_payload(
    p: int | None, max_degree: int | None, spec_path: str | None, preset: str | None, jobs: int
) -> dict:
    if spec_path is not None and preset is not None:
        raise click.UsageError("give either --spec or --preset, not both")
    if spec_path is None and preset is None:
        raise click.UsageError("one of --spec or --preset is required")
    payload: dict = {"p": p, "max_degree": max_degree, "preset": preset, "jobs": jobs}
    if spec_path is not None:
        try:
            payload["spec"] = json.loads(Path(spec_path).read_text())
        except OSError as exc:
            raise click.UsageError(f"cannot read spec file: {exc}")
        except json.JSONDecodeError as exc:
            raise click.UsageError(f"malformed spec file {spec_path}: {exc}")
    return payload


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _post_and_render(
    path: str, payload: dict, fmt: str, out: str | None, server_url: str | None
) -> int:
    with _client(server_url) as client:
        resp = client.post(path, json=payload)
    if resp.status_code in (400, 422):
        detail = resp.json().get("detail")
        click.echo(f"error: {detail}", err=True)
        return 1
    if resp.status_code != 200:
        detail = resp.json().get("detail", resp.text)
        click.echo(f"internal error: {detail}", err=True)
        return 2
    report = resp.json()
    _emit(render_report(report, fmt), out)
    status = report.get("status", "ok")
    if status == "mismatch":
        for row in report["rows"]:
            if not row["agree"]:
                click.echo(
                    "oracle mismatch at degree {degree}: kernel {dim_kernel_fast}/"
                    "{dim_kernel_oracle}, generators {min_generators_fast}/"
                    "{min_generators_oracle}".format(**row),
                    err=True,
                )
        return 2
    if status == "budget_exceeded":
        abort = report["abort"]
        click.echo(
            f"budget abort: degree {abort['degree']} needs ~{abort['estimated_mib']} MiB, "
            f"budget is {abort['budget_mib']} MiB (partial rows emitted)",
            err=True,
        )
        return 3
    return 0


def algebra_options(f):
    f = click.option("--preset", type=str, default=None, help="Named algebra preset (thompson-mod-p).")(f)
    f = click.option("--spec", "spec_path", type=str, default=None, help="Path to an algebra spec JSON file.")(f)
    f = click.option("--max-degree", type=int, default=None, help="Truncation degree (overrides the spec file).")(f)
    f = click.option("--p", "p", type=int, default=None, help="Odd prime modulus (overrides the spec file).")(f)
    return f


def output_options(f):
    f = click.option("--server-url", type=str, default=None, help="Talk to a running service instead of in-process.")(f)
    f = click.option("--jobs", type=int, default=1, help="Worker pool width for per-degree computations.")(f)
    f = click.option("--out", type=str, default=None, help="Output path (stdout when omitted).")(f)
    f = click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", help="Report format.")(f)
    return f


@click.group()
def cli() -> None:
    """Exact restriction-kernel workbench over odd prime fields."""


@cli.command("fg-profile")
@algebra_options
@output_options
def fg_profile(p, max_degree, spec_path, preset, fmt, out, jobs, server_url) -> int:
    """Minimal generator profile of the augmentation ideal."""
    payload = _algebra_payload(p, max_degree, spec_path, preset, jobs)
    return _post_and_render("/fg-profile", payload, fmt, out, server_url)


@cli.command("tensor-kernel")
@algebra_options
@output_options
@click.option("--memory-budget", type=int, default=4096, help="Per-degree memory budget in MiB.")
def tensor_kernel(p, max_degree, spec_path, preset, fmt, out, jobs, server_url, memory_budget) -> int:
    """Per-degree restriction-kernel report for the cyclic tensor power."""
    payload = _algebra_payload(p, max_degree, spec_path, preset, jobs)
    payload["memory_budget_mib"] = memory_budget
    return _post_and_render("/tensor-kernel", payload, fmt, out, server_url)


@cli.command("abelian")
@click.option("--p", "p", type=int, required=True, help="Odd prime.")
@click.option("--n", "n", type=int, required=True, help="Number of plane copies.")
@output_options
def abelian(p, n, fmt, out, jobs, server_url) -> int:
    """Obstruction dimensions for the unipotent-action example."""
    return _post_and_render("/abelian", {"p": p, "n": n}, fmt, out, server_url)


@cli.command("oracle")
@algebra_options
@output_options
def oracle(p, max_degree, spec_path, preset, fmt, out, jobs, server_url) -> int:
    """Cross-validate the fast pipeline against the brute-force oracle."""
    payload = _algebra_payload(p, max_degree, spec_path, preset, jobs)
    return _post_and_render("/oracle", payload, fmt, out, server_url)


@cli.command("serve")
@click.option("--host", type=str, default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host: str, port: int) -> int:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("reskernel.service.app:app", host=host, port=port)
    return 0


def run_cli(argv: list[str]) -> int:
    """Run the CLI programmatically; returns the exit code."""
    try:
        rv = cli.main(args=list(argv), standalone_mode=False)
    except click.UsageError as exc:
        click.echo(f"error: {exc.format_message()}", err=True)
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except SystemExit as exc:  # --help and friends
        return int(exc.code or 0)
    return rv if isinstance(rv, int) else 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
