"""Pydantic schemas for the JSON reports written by the CLI."""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from ratio_types import RatioValue, Scalar
from utils.number_utils import format_scalar


class RatioRecord(BaseModel):
    """An exact ratio as decimal strings plus a convenience binary64 value."""

    num: str
    den: str
    value: float

    @classmethod
    def from_ratio(cls, ratio: RatioValue, scale: int = 0) -> "RatioRecord":
        """Build from a scaled ratio; the shared scale cancels in the value."""
        return cls(
            num=format_scalar(ratio.num, scale),
            den=format_scalar(ratio.den, scale),
            value=ratio.as_float(),
        )


class TraceEntry(BaseModel):
    """One greedy iteration: the index picked and q_k afterwards."""

    pick: int
    num: str
    den: str

    @classmethod
    def from_step(cls, pick: int, num: Scalar, den: Scalar, scale: int) -> "TraceEntry":
        return cls(pick=pick, num=format_scalar(num, scale), den=format_scalar(den, scale))


class SolveReport(BaseModel):
    """Result of the solve command."""

    mode: str
    arithmetic: str
    N: int
    n: int
    indices: List[int]
    ratio: RatioRecord
    trace: Optional[List[TraceEntry]] = None
    ties_encountered: bool = False
    timing_ms: float
    enumerated: Optional[int] = None
    iterations: Optional[int] = None
    minimizers: Optional[List[List[int]]] = None
    lower_bound: Optional[RatioRecord] = None


class PropertyResult(BaseModel):
    """Counts for one verified property."""

    hard: bool
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    findings: int = 0


class ViolationRecord(BaseModel):
    """A failing instance, serialized for reproduction."""

    model_config = ConfigDict(populate_by_name=True)

    property_name: str = Field(alias="property")
    seed: int
    N: int
    n: int
    magnitude_bits: int
    a: List[str]
    b: List[str]
    detail: str


class VerificationReport(BaseModel):
    """Result of the verify command."""

    seed: int
    trials: int
    max_N: int
    trace_max_N: int
    magnitude_bits: int
    cap: int
    properties: Dict[str, PropertyResult]
    violations: List[ViolationRecord]
    inexact_by_n: Dict[str, int]
    max_greedy_gap: str
    ok: bool
    timing_ms: float


class BenchRow(BaseModel):
    """Median timing of one solver at one size."""

    solver: str
    arithmetic: str
    N: int
    n: int
    repeats: int
    median_ms: float
    time_ratio: Optional[float] = None  # against the previous size of the same solver
    enumerated: Optional[int] = None


class BenchReport(BaseModel):
    """Result of the bench command."""

    seed: int
    rows: List[BenchRow]


class BoundRecord(BaseModel):
    lhs: float
    rhs: float
    rhs_squared: float
    ratio: float
    identity_error: float
    bound_holds: bool
    identity_holds: bool


class ReconstructionRecord(BaseModel):
    coefficient: float
    error: float
    projection_error: float
    sampling_error: float
    sampling_bound: float
    pythagoras_holds: bool
    bound_holds: bool


class GappyReport(BaseModel):
    """Result of the gappy command."""

    N: int
    L: int
    n: int
    selection: List[int]
    ratio: RatioRecord
    bound: BoundRecord
    reconstruction: Optional[ReconstructionRecord] = None


class ErrorReport(BaseModel):
    """Machine-readable failure."""

    error: Dict[str, Any]


def to_json(report: BaseModel) -> str:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report.model_dump(mode="json", by_alias=True), indent=2, sort_keys=True) + "\n"
