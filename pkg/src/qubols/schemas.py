"""Problem-file schema and service request/response models.

The problem document is the package's on-disk interchange format (UTF-8
JSON). The same pydantic models validate documents arriving over the
service API, so files and requests share one schema:

    {
      "kind": "linsys",
      "A": [[3, 1], [-1, 2]],
      "b": [-1, 5],
      "encoding": {"l_min": 0, "l_max": 1, "scheme": "two_sided", "scale_c": 1},
      "cross_policy": "zeroed",          // or "full" or {"penalty": 100}
      "model": 1
    }

Eigen documents set ``kind: "eigen"``, drop ``b``/``cross_policy``/
``model``, and add ``lambda_encoding`` plus ``lambda_sign``
("positive" | "negative" | "both").
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .encoding import EncodingConfig
from .eigen import EigenProblem
from .linsys import CrossTermPolicy, LinearSystemProblem


class EncodingSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    l_min: int
    l_max: int
    scheme: Literal["two_sided", "offset"] = "two_sided"
    scale_c: int = Field(default=1, ge=1)

    def to_config(self) -> EncodingConfig:
        return EncodingConfig(
            l_min=self.l_min, l_max=self.l_max, scheme=self.scheme, scale_c=self.scale_c
        )

    @model_validator(mode="after")
    def _range_ok(self) -> "EncodingSpec":
        if self.l_min > self.l_max:
            raise ValueError(f"l_min ({self.l_min}) must not exceed l_max ({self.l_max})")
        return self


class PenaltyPolicy(BaseModel):
    model_config = ConfigDict(extra="forbid")

    penalty: float = Field(gt=0)


CrossPolicyField = Union[Literal["full", "zeroed"], PenaltyPolicy]


class ProblemDocument(BaseModel):
    """Validated problem file; the package's external input format."""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["linsys", "eigen"]
    A: list[list[float]]
    encoding: EncodingSpec
    b: Optional[list[float]] = None
    cross_policy: CrossPolicyField = "zeroed"
    model: Literal[1, 2] = 1
    lambda_encoding: Optional[EncodingSpec] = None
    lambda_sign: Optional[Literal["positive", "negative", "both"]] = None

    @model_validator(mode="after")
    def _structure(self) -> "ProblemDocument":
        n = len(self.A)
        if n < 1:
            raise ValueError("A must have at least one row")
        for idx, row in enumerate(self.A):
            if len(row) != n:
                raise ValueError(f"A row {idx} has length {len(row)}; expected {n} (square matrix)")
        if self.kind == "linsys":
            if self.b is None:
                raise ValueError("linsys documents require b")
            if len(self.b) != n:
                raise ValueError(f"b has length {len(self.b)}; expected {n}")
            if self.lambda_encoding is not None or self.lambda_sign is not None:
                raise ValueError("lambda_encoding/lambda_sign are eigen-only fields")
        else:
            if self.b is not None:
                raise ValueError("eigen documents must not carry b")
            if self.lambda_encoding is None or self.lambda_sign is None:
                raise ValueError("eigen documents require lambda_encoding and lambda_sign")
        return self

    def policy(self) -> CrossTermPolicy:
        if isinstance(self.cross_policy, PenaltyPolicy):
            return CrossTermPolicy.penalty(self.cross_policy.penalty)
        return CrossTermPolicy(self.cross_policy)

    def to_linear_system(self) -> LinearSystemProblem:
        if self.kind != "linsys":
            raise ValueError("not a linear-system document")
        return LinearSystemProblem(
            A=tuple(tuple(row) for row in self.A),
            b=tuple(self.b),
            config=self.encoding.to_config(),
        )

    def to_eigen_problem(self) -> EigenProblem:
        if self.kind != "eigen":
            raise ValueError("not an eigen document")
        return EigenProblem(
            A=tuple(tuple(row) for row in self.A),
            x_config=self.encoding.to_config(),
            lambda_config=self.lambda_encoding.to_config(),
            lambda_sign=self.lambda_sign,
        )


def load_problem(path) -> ProblemDocument:
    """Load and validate a problem file.

    JSON syntax errors keep their line/column context; schema violations
    surface pydantic's field paths.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return ProblemDocument.model_validate(payload)


# ---- service DTOs ------------------------------------------------------


class BuildRequest(BaseModel):
    problem: ProblemDocument
    format: Literal["coord", "vendor"] = "coord"
    include_zeros: bool = False
    num_reads: int = Field(default=1000, ge=1)


class BuildResponse(BaseModel):
    num_vars: int
    offset: float
    format: Literal["coord", "vendor"]
    text: str


class SolveRequest(BaseModel):
    problem: ProblemDocument
    sampler: Literal["exhaustive", "sa"] = "exhaustive"
    reads: int = Field(default=1000, ge=1)
    sweeps: int = Field(default=1000, ge=1)
    seed: int = 0
    beta_start: float = Field(default=0.1, gt=0)
    beta_end: float = Field(default=10.0, gt=0)
    margin: float = Field(default=0.0, ge=0)


class SampleRow(BaseModel):
    bits: str
    energy: float
    occurrences: int


class SolutionRow(BaseModel):
    bits: str
    x: list[float]
    eigenvalue: Optional[float] = None
    residual: float
    occurrences: int


class SolveResponse(BaseModel):
    num_vars: int
    offset: float
    min_energy: float
    sampler: Literal["exhaustive", "sa"]
    total_reads: int  # reads for sa; states enumerated for exhaustive
    records: list[SampleRow]
    solutions: list[SolutionRow]
    nontrivial_solutions: Optional[list[SolutionRow]] = None


class DecodeRequest(BaseModel):
    problem: ProblemDocument
    bits: str


class DecodeResponse(BaseModel):
    num_vars: int
    x: list[float]
    eigenvalue: Optional[float] = None
    residual: float


class EstimateResponse(BaseModel):
    pair_count: int
    per_pair_total: int
    grand_total: int


class CheckOutcome(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerifyResponse(BaseModel):
    passed: bool
    checks: list[CheckOutcome]
