"""FastAPI service wrapping the computation pipelines.

Usage errors (bad specs, even p, missing inputs) come back as 400; failed
internal cross-checks as 500 with kind "internal-check". Oracle mismatch
and budget aborts are regular 200 responses carrying a status field, since
they are reportable outcomes rather than transport failures.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import InternalCheckError
from ..pipelines import (
    RunConfig,
    run_abelian,
    run_fg_profile,
    run_oracle,
    run_tensor_kernel,
)
from .schemas import (
    AbelianRequest,
    AbelianResponse,
    AlgebraRequest,
    FgProfileResponse,
    HealthResponse,
    OracleResponse,
    TensorKernelRequest,
    TensorKernelResponse,
)


def _algebra_config(command: str, req: AlgebraRequest, **extra) -> RunConfig:
    spec = req.spec.model_dump() if req.spec is not None else None
    return RunConfig(
        command=command,
        p=req.p,
        max_degree=req.max_degree,
        preset=req.preset,
        spec=spec,
        jobs=req.jobs,
        **extra,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="reskernel", version=__version__)

    @app.exception_handler(ValueError)
    async def _value_error(_: Request, exc: ValueError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(InternalCheckError)
    async def _check_error(_: Request, exc: InternalCheckError) -> JSONResponse:
        return JSONResponse(
            status_code=500, content={"detail": str(exc), "kind": "internal-check"}
        )

    @app.get("/health", response_model=HealthResponse)
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/fg-profile", response_model=FgProfileResponse)
    def fg_profile(req: AlgebraRequest) -> dict:
        return run_fg_profile(_algebra_config("fg-profile", req))

    @app.post("/tensor-kernel", response_model=TensorKernelResponse)
    def tensor_kernel(req: TensorKernelRequest) -> dict:
        return run_tensor_kernel(
            _algebra_config(
                "tensor-kernel", req, memory_budget_mib=req.memory_budget_mib
            )
        )

    @app.post("/abelian", response_model=AbelianResponse)
    def abelian(req: AbelianRequest) -> dict:
        return run_abelian(RunConfig(command="abelian", p=req.p, n=req.n))

    @app.post("/oracle", response_model=OracleResponse)
    def oracle(req: AlgebraRequest) -> dict:
        return run_oracle(_algebra_config("oracle", req))

    return app


app = create_app()
