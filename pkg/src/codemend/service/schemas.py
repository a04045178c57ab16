"""Request/response models for the annotation service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class DiffSpan(BaseModel):
    op: Literal["equal", "insert", "delete", "replace"]
    a0: int
    a1: int
    b0: int
    b1: int


class TaskOut(BaseModel):
    done: bool = False
    record_id: str | None = None
    round: int
    pool_size: int
    completed: int
    original: str | None = None
    repaired: str | None = None
    compiled: bool | None = None
    sp_suggest: str | None = None
    lp_suggest: str | None = None
    diff_spans: list[DiffSpan] = Field(default_factory=list)


class AnnotationIn(BaseModel):
    record_id: str
    annotator_id: str
    sp: Literal[0, 1]
    lp: Literal[0, 1]
    round: int = Field(ge=1)
    comment: str | None = None


class AnnotationOut(BaseModel):
    record_id: str
    annotator_id: str
    sp: int
    lp: int
    round: int
    noted_at: str
    comment: str | None = None


class PairAgreement(BaseModel):
    annotator_a: str
    annotator_b: str
    n_items: int
    sp_kappa: float | None
    lp_kappa: float | None


class AgreementOut(BaseModel):
    round: int
    kind: str
    calibration_fraction: float
    threshold: float
    pairs: list[PairAgreement]
    gate_passed: bool


class ProgressEntry(BaseModel):
    round: int
    kind: str
    open: bool
    pool_size: int
    by_annotator: dict[str, int]


class ProgressOut(BaseModel):
    n_records: int
    rounds: list[ProgressEntry]


class RecordOut(BaseModel):
    record_id: str
    submission_id: str
    agent_id: str
    context: str
    original: str | None
    repaired: str | None
    compiled: bool
    failure: str | None
    metrics: dict | None
    annotations: list[AnnotationOut]


class RoundIn(BaseModel):
    kind: Literal["calibration", "full"]


class RoundOut(BaseModel):
    round: int
    kind: str
    fraction: float
    open: bool


class RepairIn(BaseModel):
    source: str


class RepairOut(BaseModel):
    repaired_source: str
    parse_ok_after: bool
    applied_fixes: list[dict]


class MetricsIn(BaseModel):
    original: str
    repaired: str


class MetricsOut(BaseModel):
    raw_levenshtein: int
    normalized_levenshtein: float
    token_edit_count: int
    sp_auto: str
    lp_auto: str
