"""Annotation persistence: append-only JSONL plus a small round registry.

Agreement and progress are pure functions of the stored annotations, so
recomputing them always matches what was served.
"""

from __future__ import annotations

import json
import random
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .. import CodemendError


class DuplicateAnnotation(CodemendError):
    def __init__(self, existing: "Annotation"):
        super().__init__(
            f"record {existing.record_id} already annotated by "
            f"{existing.annotator_id} in round {existing.round}")
        self.existing = existing


@dataclass(frozen=True)
class Annotation:
    record_id: str
    annotator_id: str
    sp: int
    lp: int
    round: int
    noted_at: str
    comment: str | None = None

    def to_dict(self) -> dict:
        return {
            "record_id": self.record_id,
            "annotator_id": self.annotator_id,
            "sp": self.sp,
            "lp": self.lp,
            "round": self.round,
            "noted_at": self.noted_at,
            "comment": self.comment,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "Annotation":
        return cls(
            record_id=obj["record_id"],
            annotator_id=obj["annotator_id"],
            sp=int(obj["sp"]),
            lp=int(obj["lp"]),
            round=int(obj["round"]),
            noted_at=obj.get("noted_at", ""),
            comment=obj.get("comment"),
        )


class AnnotationStore:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._annotations: list[Annotation] = []
        self._index: dict[tuple[str, str, int], Annotation] = {}
        if self.path.exists():
            with self.path.open("r", encoding="utf-8") as fh:
                for line in fh:
                    if line.strip():
                        self._remember(Annotation.from_dict(json.loads(line)))

    def _remember(self, ann: Annotation) -> None:
        self._annotations.append(ann)
        self._index[(ann.record_id, ann.annotator_id, ann.round)] = ann

    def get(self, record_id: str, annotator_id: str, round: int) -> Annotation | None:
        return self._index.get((record_id, annotator_id, round))

    def add(self, ann: Annotation) -> None:
        with self._lock:
            existing = self.get(ann.record_id, ann.annotator_id, ann.round)
            if existing is not None:
                raise DuplicateAnnotation(existing)
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(ann.to_dict()) + "\n")
            self._remember(ann)

    def all(self) -> list[Annotation]:
        return list(self._annotations)

    def in_round(self, round: int) -> list[Annotation]:
        return [a for a in self._annotations if a.round == round]

    def for_record(self, record_id: str) -> list[Annotation]:
        return [a for a in self._annotations if a.record_id == record_id]


@dataclass
class RoundInfo:
    round: int
    kind: str  # "calibration" | "full"
    fraction: float = 0.10
    open: bool = True

    def to_dict(self) -> dict:
        return {"round": self.round, "kind": self.kind,
                "fraction": self.fraction, "open": self.open}


class Rounds:
    """Round registry. New rounds are calibration by default; the full
    round is opened explicitly once the kappa gate is passed."""

    def __init__(self, path: str | Path, default_fraction: float = 0.10):
        self.path = Path(path)
        self.default_fraction = default_fraction
        self._rounds: dict[int, RoundInfo] = {}
        if self.path.exists():
            data = json.loads(self.path.read_text(encoding="utf-8"))
            for obj in data:
                info = RoundInfo(round=obj["round"], kind=obj["kind"],
                                 fraction=obj.get("fraction", default_fraction),
                                 open=obj.get("open", True))
                self._rounds[info.round] = info
        if not self._rounds:
            self._rounds[1] = RoundInfo(round=1, kind="calibration",
                                        fraction=default_fraction)
            self._save()

    def _save(self) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        payload = [self._rounds[k].to_dict() for k in sorted(self._rounds)]
        self.path.write_text(json.dumps(payload, indent=2), encoding="utf-8")

    def get(self, round: int) -> RoundInfo | None:
        return self._rounds.get(round)

    def all(self) -> list[RoundInfo]:
        return [self._rounds[k] for k in sorted(self._rounds)]

    def open_next(self, kind: str) -> RoundInfo:
        if kind not in ("calibration", "full"):
            raise CodemendError(f"unknown round kind {kind!r}")
        for info in self._rounds.values():
            info.open = False
        number = max(self._rounds) + 1
        info = RoundInfo(round=number, kind=kind, fraction=self.default_fraction)
        self._rounds[number] = info
        self._save()
        return info


def calibration_pool(n_records: int, round_no: int, fraction: float) -> list[int]:
    """Record indexes in the shared calibration subset for a round.

    Deterministic in (n_records, round_no, fraction): every annotator
    sees the same pool, and each round draws a fresh one.
    """
    if n_records == 0:
        return []
    k = min(n_records, max(1, int(fraction * n_records + 0.5)))
    rng = random.Random(1000 + round_no)
    return sorted(rng.sample(range(n_records), k))


def pool_for(info: RoundInfo, n_records: int) -> list[int]:
    if info.kind == "full":
        return list(range(n_records))
    return calibration_pool(n_records, info.round, info.fraction)


def utcnow() -> str:
    return datetime.now(timezone.utc).isoformat()


def resolve_labels(annotations: list[Annotation]) -> dict[str, tuple[int, int]]:
    """Final per-record (sp, lp) from human annotations.

    Uses the latest round in which each record was annotated, majority
    over annotators; ties resolve to 0 (not preserved), the conservative
    reading.
    """
    latest_round: dict[str, int] = {}
    for ann in annotations:
        latest_round[ann.record_id] = max(latest_round.get(ann.record_id, 0), ann.round)
    votes: dict[str, list[Annotation]] = {}
    for ann in annotations:
        if ann.round == latest_round[ann.record_id]:
            votes.setdefault(ann.record_id, []).append(ann)
    labels: dict[str, tuple[int, int]] = {}
    for record_id, anns in votes.items():
        sp_yes = sum(a.sp for a in anns)
        lp_yes = sum(a.lp for a in anns)
        half = len(anns) / 2
        labels[record_id] = (1 if sp_yes > half else 0, 1 if lp_yes > half else 0)
    return labels


def load_annotations(path: str | Path) -> list[Annotation]:
    path = Path(path)
    if not path.exists():
        return []
    out = []
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                out.append(Annotation.from_dict(json.loads(line)))
    return out
