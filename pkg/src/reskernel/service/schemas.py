"""Pydantic request/response models for the service endpoints."""
from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field


class AlgebraFactorModel(BaseModel):
    name: str
    degree: int
    kind: Union[Literal["exterior", "divided_power"], dict[str, int]]


class AlgebraSpecModel(BaseModel):
    p: int
    truncation: int
    factors: list[AlgebraFactorModel]


class AlgebraRequest(BaseModel):
    """Shared inputs for the algebra-driven pipelines."""

    p: Optional[int] = None
    max_degree: Optional[int] = None
    preset: Optional[str] = None
    spec: Optional[AlgebraSpecModel] = None
    jobs: int = 1


class TensorKernelRequest(AlgebraRequest):
    memory_budget_mib: int = 4096


class AbelianRequest(BaseModel):
    p: int
    n: int


class GeneratorRow(BaseModel):
    degree: int
    count: int


class FgProfileResponse(BaseModel):
    format_version: str
    config: dict
    generators: list[GeneratorRow]


class OrbitCounts(BaseModel):
    type1: int
    type2: int
    type3: int


class TensorKernelRow(BaseModel):
    degree: int
    dim_S: int
    orbit_counts: OrbitCounts
    dim_invariants: int
    dim_coinvariants: int
    dim_kernel: int
    min_generators: int


class OneModuleRow(BaseModel):
    degree: int
    submodule_dim: int
    type1_count: int
    type2_intersection_dim: int


class OneModuleCheck(BaseModel):
    passed: bool
    rows: list[OneModuleRow]


class AbortInfo(BaseModel):
    degree: int
    estimated_mib: float
    budget_mib: int


class TensorKernelResponse(BaseModel):
    format_version: str
    config: dict
    status: Literal["ok", "budget_exceeded"]
    abort: Optional[AbortInfo] = None
    coinvariant_degree_shift: int
    min_generators_framing: str
    rows: list[TensorKernelRow]
    one_module_check: Optional[OneModuleCheck] = None


class AbelianResponse(BaseModel):
    format_version: str
    config: dict
    p: int
    n: int
    dim_E2_11: int
    dim_invariants: int
    dim_image: int
    obstruction_dim: int
    norm_is_zero: bool
    dim_E2_10: int
    e2_vs_einfty_codimension_bound: int


class OracleRow(BaseModel):
    degree: int
    dim_kernel_fast: int
    dim_kernel_oracle: int
    min_generators_fast: int
    min_generators_oracle: int
    agree: bool


class OracleResponse(BaseModel):
    format_version: str
    config: dict
    status: Literal["agree", "mismatch"]
    rows: list[OracleRow]


class HealthResponse(BaseModel):
    status: str = Field(default="ok")
    version: str
