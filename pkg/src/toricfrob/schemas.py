"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class FanModel(BaseModel):
    dim: int
    rays: list[list[int]]
    max_cones: list[list[int]]
    name: Optional[str] = None


class FanRequest(BaseModel):
    fan: Optional[FanModel] = None
    catalog: Optional[str] = None


class ReportRequest(FanRequest):
    p: int = 2
    e_list: list[int] = Field(default_factory=lambda: [1, 2, 3])
    checks: bool = True


class DecomposeRequest(FanRequest):
    p: int = 2
    e: int = 1
    divisor: Optional[list[int]] = None  # twist E as divisor coefficients


class ErrorBody(BaseModel):
    error: str
    message: str
    exit_code: int
    diagnostics: Optional[dict] = None
