"""FastAPI application wrapping the record store and annotation
workflow. A research tool: authentication is one shared token per
annotator, passed in the X-Annotator-Token header when configured.
"""

from __future__ import annotations

import difflib
from itertools import combinations
from pathlib import Path

from fastapi import FastAPI, Header, HTTPException, Query
from fastapi.staticfiles import StaticFiles

from ..harness import RecordStore, RepairRecord
from ..metrics import compute_repair_metrics
from ..repair_rules import repair
from ..stats import cohen_kappa
from .schemas import (
    AgreementOut,
    AnnotationIn,
    AnnotationOut,
    DiffSpan,
    MetricsIn,
    MetricsOut,
    PairAgreement,
    ProgressEntry,
    ProgressOut,
    RecordOut,
    RepairIn,
    RepairOut,
    RoundIn,
    RoundOut,
    TaskOut,
)
from .store import Annotation, AnnotationStore, DuplicateAnnotation, Rounds, pool_for, utcnow

KAPPA_THRESHOLD = 0.80


def create_app(
    records_dir: str | Path,
    annotators: dict[str, str] | None = None,
    calibration_fraction: float = 0.10,
    kappa_threshold: float = KAPPA_THRESHOLD,
    static_dir: str | Path | None = None,
    originals: dict[str, str] | None = None,
) -> FastAPI:
    """Build the service over an experiment output directory.

    records_dir holds records.jsonl; annotations and the round registry
    are persisted next to it. originals maps submission_id to source
    text for display (falls back to blank when unknown).
    """
    records_dir = Path(records_dir)
    store = RecordStore(records_dir / "records.jsonl")
    records: list[RepairRecord] = store.load()
    index: dict[str, RepairRecord] = {r.key: r for r in records}
    order: list[str] = [r.key for r in records]
    annotations = AnnotationStore(records_dir / "annotations.jsonl")
    rounds = Rounds(records_dir / "rounds.json", default_fraction=calibration_fraction)
    originals = originals or {}

    app = FastAPI(title="codemend annotation service")

    def require_annotator(annotator_id: str, token: str | None) -> None:
        if annotators is None:
            return
        if annotator_id not in annotators:
            raise HTTPException(status_code=404, detail=f"unknown annotator {annotator_id!r}")
        if token != annotators[annotator_id]:
            raise HTTPException(status_code=401, detail="bad or missing annotator token")

    def get_round(round_no: int):
        info = rounds.get(round_no)
        if info is None:
            raise HTTPException(status_code=404, detail=f"round {round_no} does not exist")
        return info

    def record_or_404(record_id: str) -> RepairRecord:
        rec = index.get(record_id)
        if rec is None:
            raise HTTPException(status_code=404, detail=f"unknown record {record_id!r}")
        return rec

    @app.get("/api/health")
    def health() -> dict:
        return {"status": "ok", "records": len(records)}

    @app.get("/api/tasks/next", response_model=TaskOut)
    def next_task(
        annotator: str = Query(...),
        round: int = Query(..., ge=1),
        x_annotator_token: str | None = Header(default=None),
    ) -> TaskOut:
        require_annotator(annotator, x_annotator_token)
        info = get_round(round)
        if not info.open:
            raise HTTPException(status_code=409, detail=f"round {round} is closed")
        pool = pool_for(info, len(records))
        completed = 0
        for idx in pool:
            rec = records[idx]
            if annotations.get(rec.key, annotator, round) is not None:
                completed += 1
                continue
            original = originals.get(rec.submission_id, "")
            repaired = rec.repaired_source or ""
            matcher = difflib.SequenceMatcher(None, original, repaired, autojunk=False)
            spans = [DiffSpan(op=op, a0=a0, a1=a1, b0=b0, b1=b1)
                     for op, a0, a1, b0, b1 in matcher.get_opcodes()]
            metrics = rec.metrics or {}
            return TaskOut(
                done=False,
                record_id=rec.key,
                round=round,
                pool_size=len(pool),
                completed=completed,
                original=original,
                repaired=rec.repaired_source,
                compiled=rec.compiled,
                sp_suggest=metrics.get("sp_auto"),
                lp_suggest=metrics.get("lp_auto"),
                diff_spans=spans,
            )
        return TaskOut(done=True, round=round, pool_size=len(pool), completed=len(pool))

    @app.post("/api/annotations", response_model=AnnotationOut, status_code=201)
    def submit(
        body: AnnotationIn,
        x_annotator_token: str | None = Header(default=None),
    ) -> AnnotationOut:
        require_annotator(body.annotator_id, x_annotator_token)
        record_or_404(body.record_id)
        info = get_round(body.round)
        if not info.open:
            raise HTTPException(status_code=409, detail=f"round {body.round} is closed")
        ann = Annotation(
            record_id=body.record_id,
            annotator_id=body.annotator_id,
            sp=body.sp,
            lp=body.lp,
            round=body.round,
            noted_at=utcnow(),
            comment=body.comment,
        )
        try:
            annotations.add(ann)
        except DuplicateAnnotation as exc:
            raise HTTPException(
                status_code=409,
                detail={
                    "message": "duplicate annotation",
                    "existing": exc.existing.to_dict(),
                },
            ) from exc
        return AnnotationOut(**ann.to_dict())

    @app.get("/api/agreement", response_model=AgreementOut)
    def agreement(round: int = Query(..., ge=1)) -> AgreementOut:
        info = get_round(round)
        in_round = annotations.in_round(round)
        by_annotator: dict[str, dict[str, Annotation]] = {}
        for ann in in_round:
            by_annotator.setdefault(ann.annotator_id, {})[ann.record_id] = ann
        pairs: list[PairAgreement] = []
        gate = True
        any_overlap = False
        for a, b in combinations(sorted(by_annotator), 2):
            shared = sorted(set(by_annotator[a]) & set(by_annotator[b]))
            if not shared:
                continue
            any_overlap = True
            sp_a = [by_annotator[a][rid].sp for rid in shared]
            sp_b = [by_annotator[b][rid].sp for rid in shared]
            lp_a = [by_annotator[a][rid].lp for rid in shared]
            lp_b = [by_annotator[b][rid].lp for rid in shared]
            sp_kappa = cohen_kappa(sp_a, sp_b).kappa
            lp_kappa = cohen_kappa(lp_a, lp_b).kappa
            # the gate is strict: agreement must exceed the threshold
            if not (sp_kappa > kappa_threshold and lp_kappa > kappa_threshold):
                gate = False
            pairs.append(PairAgreement(
                annotator_a=a, annotator_b=b, n_items=len(shared),
                sp_kappa=sp_kappa, lp_kappa=lp_kappa))
        if not any_overlap:
            raise HTTPException(
                status_code=409,
                detail="no annotator pair has co-annotated items in this round")
        return AgreementOut(
            round=round,
            kind=info.kind,
            calibration_fraction=info.fraction,
            threshold=kappa_threshold,
            pairs=pairs,
            gate_passed=gate,
        )

    @app.get("/api/progress", response_model=ProgressOut)
    def progress() -> ProgressOut:
        entries = []
        for info in rounds.all():
            pool = pool_for(info, len(records))
            counts: dict[str, int] = {}
            for ann in annotations.in_round(info.round):
                counts[ann.annotator_id] = counts.get(ann.annotator_id, 0) + 1
            entries.append(ProgressEntry(
                round=info.round, kind=info.kind, open=info.open,
                pool_size=len(pool), by_annotator=counts))
        return ProgressOut(n_records=len(records), rounds=entries)

    @app.get("/api/records/{record_id}", response_model=RecordOut)
    def get_record(record_id: str) -> RecordOut:
        rec = record_or_404(record_id)
        return RecordOut(
            record_id=rec.key,
            submission_id=rec.submission_id,
            agent_id=rec.agent_id,
            context=rec.context,
            original=originals.get(rec.submission_id),
            repaired=rec.repaired_source,
            compiled=rec.compiled,
            failure=rec.failure,
            metrics=rec.metrics,
            annotations=[AnnotationOut(**a.to_dict())
                         for a in annotations.for_record(rec.key)],
        )

    @app.post("/api/rounds", response_model=RoundOut, status_code=201)
    def open_round(body: RoundIn) -> RoundOut:
        info = rounds.open_next(body.kind)
        return RoundOut(round=info.round, kind=info.kind,
                        fraction=info.fraction, open=info.open)

    @app.get("/api/rounds", response_model=list[RoundOut])
    def list_rounds() -> list[RoundOut]:
        return [RoundOut(round=i.round, kind=i.kind, fraction=i.fraction, open=i.open)
                for i in rounds.all()]

    @app.post("/api/repair", response_model=RepairOut)
    def repair_endpoint(body: RepairIn) -> RepairOut:
        outcome = repair(body.source)
        return RepairOut(
            repaired_source=outcome.repaired_source,
            parse_ok_after=outcome.parse_ok_after,
            applied_fixes=[f.to_dict() for f in outcome.applied_fixes],
        )

    @app.post("/api/metrics", response_model=MetricsOut)
    def metrics_endpoint(body: MetricsIn) -> MetricsOut:
        m = compute_repair_metrics(body.original, body.repaired, compiled=False)
        return MetricsOut(
            raw_levenshtein=m.raw_levenshtein,
            normalized_levenshtein=m.normalized_levenshtein,
            token_edit_count=m.token_edit_count,
            sp_auto=m.sp_auto.value,
            lp_auto=m.lp_auto.value,
        )

    if static_dir is not None and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
