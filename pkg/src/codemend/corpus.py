"""Submission corpus ingest, export and reproducible sampling.

Accepts spreadsheet-shaped CSV (RFC 4180 quoting, UTF-8, LF or CRLF)
and JSONL. A corpus is immutable after ingest; sampling never mutates.
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Callable, Iterator

from . import CodemendError


class CompileStatus(str, Enum):
    COMPILABLE = "compilable"
    UNCOMPILABLE = "uncompilable"
    UNKNOWN = "unknown"


class IngestError(CodemendError):
    pass


class SamplingError(CodemendError):
    def __init__(self, message: str, available: int):
        super().__init__(message)
        self.available = available


@dataclass(frozen=True)
class Submission:
    id: str
    student_id: str
    problem_id: str
    source: str
    submitted_at: str | None = None
    compile_status: CompileStatus = CompileStatus.UNKNOWN
    score: float | None = None


@dataclass(frozen=True)
class FewshotPair:
    broken: str
    repaired: str
    label: str = "good"  # "good" or "bad" (a counterexample repair)


@dataclass(frozen=True)
class Problem:
    id: str
    statement: str
    fewshot_examples: tuple[FewshotPair, ...] = ()


@dataclass(frozen=True)
class Corpus:
    submissions: tuple[Submission, ...]
    by_id: dict[str, Submission] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "by_id", {s.id: s for s in self.submissions})

    def __len__(self) -> int:
        return len(self.submissions)

    def __iter__(self) -> Iterator[Submission]:
        return iter(self.submissions)


_REQUIRED = ("id", "student_id", "problem_id", "code")
_OPTIONAL = ("compile_status", "score", "timestamp")


def ingest(path: str | Path, format: str) -> Corpus:
    """Load a corpus file; format is "csv" or "jsonl"."""
    path = Path(path)
    if not path.exists():
        raise IngestError(f"corpus file not found: {path}")
    if format == "csv":
        rows = _read_csv(path)
    elif format == "jsonl":
        rows = _read_jsonl(path)
    else:
        raise IngestError(f"unknown corpus format {format!r} (expected csv or jsonl)")

    submissions: list[Submission] = []
    seen: set[str] = set()
    for row_no, row in rows:
        missing = [key for key in ("id", "student_id", "problem_id")
                   if not str(row.get(key) or "").strip()]
        if row.get("code") in (None, ""):
            missing.append("code")
        if missing:
            raise IngestError(f"row {row_no}: missing required field(s) {', '.join(missing)}")
        sid = str(row["id"]).strip()
        if sid in seen:
            raise IngestError(f"row {row_no}: duplicate submission id {sid!r}")
        seen.add(sid)
        submissions.append(Submission(
            id=sid,
            student_id=str(row["student_id"]).strip(),
            problem_id=str(row["problem_id"]).strip(),
            source=str(row["code"]),
            submitted_at=_opt_str(row.get("timestamp")),
            compile_status=_parse_status(row.get("compile_status"), row_no),
            score=_parse_score(row.get("score"), row_no),
        ))
    return Corpus(submissions=tuple(submissions))


def _read_csv(path: Path) -> list[tuple[int, dict]]:
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise IngestError("empty CSV file")
        header = set(reader.fieldnames)
        missing = [c for c in _REQUIRED if c not in header]
        if missing:
            raise IngestError(f"CSV header missing column(s): {', '.join(missing)}")
        return [(i, row) for i, row in enumerate(reader, start=1)]


def _read_jsonl(path: Path) -> list[tuple[int, dict]]:
    rows: list[tuple[int, dict]] = []
    with path.open("r", encoding="utf-8") as fh:
        for i, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"row {i}: invalid JSON ({exc.msg})") from exc
            if not isinstance(obj, dict):
                raise IngestError(f"row {i}: expected a JSON object")
            rows.append((i, obj))
    return rows


def _opt_str(value) -> str | None:
    if value is None:
        return None
    text = str(value).strip()
    return text or None


def _parse_status(value, row_no: int) -> CompileStatus:
    text = (str(value).strip().lower() if value is not None else "")
    if not text:
        return CompileStatus.UNKNOWN
    try:
        return CompileStatus(text)
    except ValueError:
        raise IngestError(
            f"row {row_no}: bad compile_status {value!r} "
            f"(expected compilable, uncompilable or unknown)") from None


def _parse_score(value, row_no: int) -> float | None:
    if value is None or str(value).strip() == "":
        return None
    try:
        score = float(value)
    except (TypeError, ValueError):
        raise IngestError(f"row {row_no}: bad score {value!r}") from None
    if not 0.0 <= score <= 1.0:
        raise IngestError(f"row {row_no}: score {score} outside [0, 1]")
    return score


def export(corpus: Corpus, path: str | Path, format: str) -> None:
    """Write a corpus back out; round-trips through ingest()."""
    path = Path(path)
    if format == "csv":
        with path.open("w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(list(_REQUIRED) + list(_OPTIONAL))
            for s in corpus:
                writer.writerow([
                    s.id, s.student_id, s.problem_id, s.source,
                    s.compile_status.value,
                    "" if s.score is None else repr(s.score),
                    s.submitted_at or "",
                ])
    elif format == "jsonl":
        with path.open("w", encoding="utf-8") as fh:
            for s in corpus:
                obj = {
                    "id": s.id,
                    "student_id": s.student_id,
                    "problem_id": s.problem_id,
                    "code": s.source,
                    "compile_status": s.compile_status.value,
                }
                if s.score is not None:
                    obj["score"] = s.score
                if s.submitted_at is not None:
                    obj["timestamp"] = s.submitted_at
                fh.write(json.dumps(obj) + "\n")
    else:
        raise IngestError(f"unknown corpus format {format!r} (expected csv or jsonl)")


def load_problems(path: str | Path) -> dict[str, Problem]:
    """Problems file: JSON list of {id, statement, fewshot: [{broken, repaired, label?}]}."""
    path = Path(path)
    data = json.loads(path.read_text(encoding="utf-8"))
    problems: dict[str, Problem] = {}
    for entry in data:
        pairs = []
        for pair in entry.get("fewshot", []):
            fp = FewshotPair(
                broken=pair["broken"],
                repaired=pair["repaired"],
                label=pair.get("label", "good"),
            )
            if fp.broken == fp.repaired:
                raise IngestError(
                    f"problem {entry['id']}: fewshot pair has identical broken "
                    "and repaired text")
            pairs.append(fp)
        problem = Problem(
            id=str(entry["id"]),
            statement=entry.get("statement", ""),
            fewshot_examples=tuple(pairs),
        )
        problems[problem.id] = problem
    return problems


def sample_uncompilable(
    corpus: Corpus,
    problems: set[str],
    n: int,
    seed: int,
    classify: Callable[[str], bool] | None = None,
    stratify: bool = False,
) -> list[Submission]:
    """Draw n distinct uncompilable submissions from the given problems.

    Submissions with unknown compile status are classified lazily with
    the internal parse check (or the injected classifier, which returns
    True for compilable source). Identical inputs always produce the
    identical sample, in the same order.
    """
    if classify is None:
        from .compilecheck import Backend, check

        def classify(source: str) -> bool:
            return check(source, Backend.INTERNAL_PARSE).ok

    pool: list[Submission] = []
    for sub in corpus:
        if sub.problem_id not in problems:
            continue
        if not sub.source.strip():
            continue
        status = sub.compile_status
        if status is CompileStatus.UNKNOWN:
            status = (CompileStatus.COMPILABLE if classify(sub.source)
                      else CompileStatus.UNCOMPILABLE)
            sub = replace(sub, compile_status=status)
        if status is CompileStatus.UNCOMPILABLE:
            pool.append(sub)

    if n > len(pool):
        raise SamplingError(
            f"requested {n} uncompilable submissions but only {len(pool)} "
            f"are available in problems {sorted(problems)}",
            available=len(pool))
    rng = random.Random(seed)
    if not stratify:
        return rng.sample(pool, n)

    by_problem: dict[str, list[Submission]] = {}
    for sub in pool:
        by_problem.setdefault(sub.problem_id, []).append(sub)
    ordered = sorted(by_problem)
    base, extra = divmod(n, len(ordered))
    sampled: list[Submission] = []
    for idx, pid in enumerate(ordered):
        want = base + (1 if idx < extra else 0)
        bucket = by_problem[pid]
        if want > len(bucket):
            raise SamplingError(
                f"stratified sampling needs {want} from problem {pid} but only "
                f"{len(bucket)} are available", available=len(bucket))
        sampled.extend(rng.sample(bucket, want))
    return sampled
