"""Experiment orchestration: every sampled submission runs through every
(agent x context) condition, producing an append-only JSONL record store
and, from it, the analysis tables.
"""

from __future__ import annotations

import json
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import CodemendError
from .agents import (
    AgentEndpoint,
    ContextLevel,
    HttpEndpoint,
    PromptTemplates,
    build_prompt,
    mock_agent,
    prompt_hash,
    run_agent,
)
from .compilecheck import Backend, CompilerDiagnostics, check
from .corpus import Corpus, Problem, Submission, ingest, load_problems, sample_uncompilable
from .metrics import RepairMetrics, SpAuto, LpAuto, compute_repair_metrics
from .stats import ContingencyTable, StatsError, anova_oneway, chi_square


class ConfigError(CodemendError):
    pass


@dataclass(frozen=True)
class AgentSpec:
    id: str
    kind: str  # "mock" | "http"
    behavior: str = "rule_proxy"
    script: str | None = None
    base_url: str = ""
    model: str = ""
    api_key_env: str | None = None
    temperature: float = 0.0
    max_retries: int = 2

    def endpoint(self) -> AgentEndpoint:
        if self.kind == "mock":
            return mock_agent(self.behavior, script=self.script, agent_id=self.id)
        if self.kind == "http":
            if not self.base_url or not self.model:
                raise ConfigError(f"agent {self.id}: http agents need base_url and model")
            return HttpEndpoint(agent_id=self.id, base_url=self.base_url,
                                model=self.model, api_key_env=self.api_key_env,
                                temperature=self.temperature)
        raise ConfigError(f"agent {self.id}: unknown kind {self.kind!r}")


@dataclass(frozen=True)
class ExperimentConfig:
    corpus_path: str
    corpus_format: str
    problems_path: str
    sample_n: int
    sample_seed: int
    sample_problems: tuple[str, ...]
    agents: tuple[AgentSpec, ...]
    contexts: tuple[ContextLevel, ...]
    output_dir: str
    stratify: bool = False
    compile_backend: Backend = Backend.INTERNAL_PARSE
    compiler: str = "javac"
    parallelism: int = 4
    templates: PromptTemplates | None = None

    def __post_init__(self):
        if not self.agents:
            raise ConfigError("config needs at least one agent")
        if not self.contexts:
            raise ConfigError("config needs at least one context level")


def load_config(path: str | Path) -> ExperimentConfig:
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    try:
        sample = raw["sample"]
        agents = tuple(
            AgentSpec(
                id=a["id"],
                kind=a.get("kind", "mock"),
                behavior=a.get("behavior", "rule_proxy"),
                script=a.get("script"),
                base_url=a.get("base_url", ""),
                model=a.get("model", ""),
                api_key_env=a.get("api_key_env"),
                temperature=a.get("temperature", 0.0),
                max_retries=a.get("max_retries", 2),
            )
            for a in raw["agents"]
        )
        templates = None
        if "templates" in raw:
            t = raw["templates"]
            templates = PromptTemplates.from_paths(t["system"], t["low"], t["high"])
        return ExperimentConfig(
            corpus_path=raw["corpus"]["path"],
            corpus_format=raw["corpus"].get("format", "csv"),
            problems_path=raw["problems"],
            sample_n=int(sample["n"]),
            sample_seed=int(sample["seed"]),
            sample_problems=tuple(sample["problems"]),
            stratify=bool(sample.get("stratify", False)),
            agents=agents,
            contexts=tuple(ContextLevel(c) for c in raw.get("contexts", ["low", "high"])),
            compile_backend=Backend(raw.get("compile_backend", "internal_parse")),
            compiler=raw.get("compiler", "javac"),
            parallelism=int(raw.get("parallelism", 4)),
            output_dir=raw["output_dir"],
            templates=templates,
        )
    except KeyError as exc:
        raise ConfigError(f"config is missing key {exc}") from exc


# ---------------------------------------------------------------------------
# Records
# ---------------------------------------------------------------------------

def record_key(submission_id: str, agent_id: str, context: str) -> str:
    return f"{submission_id}::{agent_id}::{context}"


@dataclass(frozen=True)
class RepairRecord:
    submission_id: str
    agent_id: str
    context: str
    prompt_hash: str
    created_at: str
    latency_ms: int = 0
    repaired_source: str | None = None
    raw_reply: str = ""
    failure: str | None = None
    diagnostics: dict | None = None
    metrics: dict | None = None

    @property
    def key(self) -> str:
        return record_key(self.submission_id, self.agent_id, self.context)

    @property
    def compiled(self) -> bool:
        return bool(self.diagnostics and self.diagnostics.get("ok"))

    def to_dict(self) -> dict:
        return {
            "submission_id": self.submission_id,
            "agent_id": self.agent_id,
            "context": self.context,
            "prompt_hash": self.prompt_hash,
            "created_at": self.created_at,
            "latency_ms": self.latency_ms,
            "repaired_source": self.repaired_source,
            "raw_reply": self.raw_reply,
            "failure": self.failure,
            "diagnostics": self.diagnostics,
            "metrics": self.metrics,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "RepairRecord":
        return cls(
            submission_id=obj["submission_id"],
            agent_id=obj["agent_id"],
            context=obj["context"],
            prompt_hash=obj["prompt_hash"],
            created_at=obj["created_at"],
            latency_ms=obj.get("latency_ms", 0),
            repaired_source=obj.get("repaired_source"),
            raw_reply=obj.get("raw_reply", ""),
            failure=obj.get("failure"),
            diagnostics=obj.get("diagnostics"),
            metrics=obj.get("metrics"),
        )


class RecordStore:
    """Append-only JSONL store; one repair record per line."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()

    def load(self) -> list[RepairRecord]:
        if not self.path.exists():
            return []
        records = []
        with self.path.open("r", encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    records.append(RepairRecord.from_dict(json.loads(line)))
        return records

    def keys(self) -> set[str]:
        return {r.key for r in self.load()}

    def append(self, record: RepairRecord) -> None:
        line = json.dumps(record.to_dict()) + "\n"
        with self._lock:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(line)


@dataclass
class ExperimentSummary:
    total_records: int
    new_records: int
    skipped_existing: int
    by_condition: dict[str, dict[str, int]]
    records_path: str


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat()


def run_experiment(config: ExperimentConfig) -> ExperimentSummary:
    """Run (or resume) the full sample x agent x context grid.

    Existing (submission, agent, context) records are skipped, so an
    interrupted run picks up where it left off. Agent failures become
    records with failure set; the run continues.
    """
    corpus = ingest(config.corpus_path, config.corpus_format)
    problems = load_problems(config.problems_path)
    backend = config.compile_backend

    def classify(source: str) -> bool:
        return check(source, backend, compiler=config.compiler).ok

    sampled = sample_uncompilable(
        corpus, set(config.sample_problems), config.sample_n,
        config.sample_seed, classify=classify, stratify=config.stratify)

    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    store = RecordStore(out_dir / "records.jsonl")
    existing = store.keys()

    endpoints = {spec.id: spec.endpoint() for spec in config.agents}
    retries = {spec.id: spec.max_retries for spec in config.agents}
    templates = config.templates or PromptTemplates.load_default()

    diag_cache: dict[str, CompilerDiagnostics] = {}

    def original_diag(sub: Submission) -> CompilerDiagnostics:
        if sub.id not in diag_cache:
            diag_cache[sub.id] = check(sub.source, backend, compiler=config.compiler)
        return diag_cache[sub.id]

    tasks = [
        (sub, spec, ctx)
        for sub in sampled
        for spec in config.agents
        for ctx in config.contexts
        if record_key(sub.id, spec.id, ctx.value) not in existing
    ]

    def process(sub: Submission, spec: AgentSpec, ctx: ContextLevel) -> RepairRecord:
        problem = problems.get(sub.problem_id)
        if problem is None:
            problem = Problem(id=sub.problem_id, statement="", fewshot_examples=())
        bundle = build_prompt(sub, problem=problem, diag=original_diag(sub),
                              level=ctx, templates=templates)
        reply = run_agent(bundle, endpoints[spec.id], max_retries=retries[spec.id])
        diagnostics = None
        metrics = None
        if reply.repaired_source is not None:
            diag = check(reply.repaired_source, backend, compiler=config.compiler)
            diagnostics = diag.to_dict()
            metrics = compute_repair_metrics(sub.source, reply.repaired_source,
                                             diag.ok).to_dict()
        return RepairRecord(
            submission_id=sub.id,
            agent_id=spec.id,
            context=ctx.value,
            prompt_hash=prompt_hash(bundle),
            created_at=_utcnow(),
            latency_ms=reply.latency_ms,
            repaired_source=reply.repaired_source,
            raw_reply=reply.raw_reply,
            failure=reply.failure.value if reply.failure else None,
            diagnostics=diagnostics,
            metrics=metrics,
        )

    # Results are appended in task order regardless of completion order,
    # so two runs of the same config produce stores that differ only in
    # timestamps and latencies.
    if tasks:
        with ThreadPoolExecutor(max_workers=max(1, config.parallelism)) as pool:
            futures = [pool.submit(process, sub, spec, ctx) for sub, spec, ctx in tasks]
            for future in futures:
                store.append(future.result())

    records = store.load()
    by_condition: dict[str, dict[str, int]] = {}
    for rec in records:
        cond = f"{rec.agent_id}/{rec.context}"
        slot = by_condition.setdefault(cond, {"records": 0, "compiled": 0, "failures": 0})
        slot["records"] += 1
        if rec.compiled:
            slot["compiled"] += 1
        if rec.failure:
            slot["failures"] += 1
    return ExperimentSummary(
        total_records=len(records),
        new_records=len(tasks),
        skipped_existing=len(existing),
        by_condition=by_condition,
        records_path=str(store.path),
    )


def verify_prompt_hashes(
    records: list[RepairRecord],
    config: ExperimentConfig,
) -> list[str]:
    """Keys of records whose stored prompt hash does not match a rebuild
    of the prompt from stored inputs (tamper check)."""
    corpus = ingest(config.corpus_path, config.corpus_format)
    problems = load_problems(config.problems_path)
    templates = config.templates or PromptTemplates.load_default()
    backend = config.compile_backend
    bad: list[str] = []
    diag_cache: dict[str, CompilerDiagnostics] = {}
    for rec in records:
        sub = corpus.by_id.get(rec.submission_id)
        if sub is None:
            bad.append(rec.key)
            continue
        if sub.id not in diag_cache:
            diag_cache[sub.id] = check(sub.source, backend, compiler=config.compiler)
        problem = problems.get(sub.problem_id)
        if problem is None:
            problem = Problem(id=sub.problem_id, statement="", fewshot_examples=())
        bundle = build_prompt(sub, problem=problem, diag=diag_cache[sub.id],
                              level=ContextLevel(rec.context), templates=templates)
        if prompt_hash(bundle) != rec.prompt_hash:
            bad.append(rec.key)
    return bad


# ---------------------------------------------------------------------------
# Analysis report
# ---------------------------------------------------------------------------

@dataclass
class TableSection:
    title: str
    table: ContingencyTable | None
    test: dict | None
    note: str | None = None
    rows: list[dict] = field(default_factory=list)


@dataclass
class DistanceSection:
    title: str
    groups: dict[str, list[float]]
    test: dict | None
    note: str | None = None


@dataclass
class AnalysisReport:
    n_records: int
    provenance: str  # "auto" | "human" | "mixed"
    sections: list[TableSection]
    distances: list[DistanceSection]
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out: dict = {
            "n_records": self.n_records,
            "label_provenance": self.provenance,
            "notes": self.notes,
            "tables": {},
            "edit_distance": {},
        }
        for sec in self.sections:
            entry: dict = {"rows": sec.rows, "note": sec.note}
            if sec.table is not None:
                entry["counts"] = [list(r) for r in sec.table.counts]
                entry["row_labels"] = list(sec.table.row_labels)
                entry["col_labels"] = list(sec.table.col_labels)
            entry["test"] = sec.test
            out["tables"][sec.title] = entry
        for dist in self.distances:
            out["edit_distance"][dist.title] = {
                "means": {k: (sum(v) / len(v) if v else None)
                          for k, v in dist.groups.items()},
                "counts": {k: len(v) for k, v in dist.groups.items()},
                "test": dist.test,
                "note": dist.note,
            }
        return out

    def render_text(self) -> str:
        lines: list[str] = []
        for sec in self.sections:
            lines.append(sec.title)
            if sec.rows:
                header = list(sec.rows[0].keys())
                widths = [max(len(str(h)), *(len(str(r[h])) for r in sec.rows))
                          for h in header]
                lines.append("  " + "  ".join(h.ljust(w) for h, w in zip(header, widths)))
                for r in sec.rows:
                    lines.append("  " + "  ".join(
                        str(r[h]).ljust(w) for h, w in zip(header, widths)))
            if sec.test is not None:
                lines.append("  " + _format_chi2(sec.test))
            if sec.note:
                lines.append(f"  note: {sec.note}")
            lines.append("")
        for dist in self.distances:
            lines.append(dist.title)
            for name, values in dist.groups.items():
                mean = sum(values) / len(values) if values else float("nan")
                lines.append(f"  {name}: mean {mean:.1f} (n = {len(values)})")
            if dist.test is not None:
                lines.append("  " + _format_anova(dist.test))
            if dist.note:
                lines.append(f"  note: {dist.note}")
            lines.append("")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines).rstrip() + "\n"


def _format_p(p: float) -> str:
    if p < 0.001:
        return "p < .001"
    return f"p = {f'{p:.3f}'.lstrip('0')}"


def _format_chi2(test: dict) -> str:
    return (f"chi-square({test['df']}, N = {test['n']}) = "
            f"{test['statistic']:.2f}, {_format_p(test['p'])}")


def _format_anova(test: dict) -> str:
    return (f"F({test['df_between']}, {test['df_within']}) = "
            f"{test['f']:.2f}, {_format_p(test['p'])}")


def _label_of(record: RepairRecord, human: dict[str, tuple[int, int]] | None,
              kind: str) -> tuple[int | None, bool]:
    """Resolve the SP or LP label for a record: human first, else the
    auto pre-screen. Returns (label, from_human)."""
    if human is not None and record.key in human:
        sp, lp = human[record.key]
        return (sp if kind == "sp" else lp), True
    if not record.metrics:
        return None, False
    if kind == "sp":
        value = record.metrics.get("sp_auto")
        if value == SpAuto.PRESERVED.value:
            return 1, False
        if value == SpAuto.CHANGED.value:
            return 0, False
        return None, False
    value = record.metrics.get("lp_auto")
    if value == LpAuto.SYNTACTIC_ONLY.value:
        return 1, False
    if value == LpAuto.SEMANTIC_CHANGE.value:
        return 0, False
    return None, False


def _binary_section(
    title: str,
    records: list[RepairRecord],
    group_of,
    label_of,
    yes_label: str,
    no_label: str,
) -> TableSection:
    groups = sorted({group_of(r) for r in records})
    counts: dict[str, list[int]] = {g: [0, 0] for g in groups}
    for rec in records:
        label = label_of(rec)
        if label is None:
            continue
        counts[group_of(rec)][0 if label == 1 else 1] += 1
    rows = []
    for g in groups:
        yes, no = counts[g]
        total = yes + no
        rate = f"{100 * yes / total:.1f}%" if total else "-"
        rows.append({"group": g, yes_label: yes, no_label: no, "rate": rate})
    matrix = [counts[g] for g in groups]
    test = None
    note = None
    if len(groups) < 2:
        note = "between-group test skipped: only one group present"
        return TableSection(title, None, None, note, rows)
    table = ContingencyTable.from_counts(matrix, row_labels=groups,
                                         col_labels=[yes_label, no_label])
    try:
        result = chi_square(table)
        test = {"statistic": result.statistic, "df": result.df,
                "p": result.p, "n": result.n}
    except StatsError as exc:
        note = f"chi-square skipped: {exc}"
    return TableSection(title, table, test, note, rows)


def build_report(
    records: list[RepairRecord],
    annotations: dict[str, tuple[int, int]] | None = None,
    use_normalized: bool = False,
    lp_requires_sp: bool = False,
) -> AnalysisReport:
    """Contingency tables and tests over a record store.

    SP/LP tables use human annotations where present, falling back to
    the auto pre-screens, and count compiled repairs only. With
    lp_requires_sp, LP tables additionally drop repairs whose SP label
    is 0.
    """
    if not records:
        raise CodemendError("record store is empty")

    human_used = annotations is not None and any(
        r.key in annotations for r in records)
    auto_used = any(
        r.metrics and (annotations is None or r.key not in annotations)
        for r in records)
    provenance = ("mixed" if human_used and auto_used
                  else "human" if human_used
                  else "auto")

    sections: list[TableSection] = []
    sections.append(_binary_section(
        "Compilation by agent", records, lambda r: r.agent_id,
        lambda r: 1 if r.compiled else 0, "compiled", "failed"))
    sections.append(_binary_section(
        "Compilation by context", records, lambda r: r.context,
        lambda r: 1 if r.compiled else 0, "compiled", "failed"))

    compiled_records = [r for r in records if r.compiled]

    def sp_label(rec: RepairRecord):
        return _label_of(rec, annotations, "sp")[0]

    def lp_label(rec: RepairRecord):
        label = _label_of(rec, annotations, "lp")[0]
        if label is None:
            return None
        if lp_requires_sp and sp_label(rec) == 0:
            return None
        return label

    sections.append(_binary_section(
        "Structural preservation by agent", compiled_records,
        lambda r: r.agent_id, sp_label, "preserved", "changed"))
    sections.append(_binary_section(
        "Structural preservation by context", compiled_records,
        lambda r: r.context, sp_label, "preserved", "changed"))
    sections.append(_binary_section(
        "Logic preservation by agent", compiled_records,
        lambda r: r.agent_id, lp_label, "syntactic_only", "semantic_change"))
    sections.append(_binary_section(
        "Logic preservation by context", compiled_records,
        lambda r: r.context, lp_label, "syntactic_only", "semantic_change"))

    metric_key = "normalized_levenshtein" if use_normalized else "raw_levenshtein"
    distances: list[DistanceSection] = []
    for title, group_of in (("Edit distance by agent", lambda r: r.agent_id),
                            ("Edit distance by context", lambda r: r.context)):
        groups: dict[str, list[float]] = {}
        for rec in records:
            if rec.metrics and metric_key in rec.metrics:
                groups.setdefault(group_of(rec), []).append(rec.metrics[metric_key])
        test = None
        note = None
        nonempty = {k: v for k, v in groups.items() if v}
        if len(nonempty) < 2:
            note = "ANOVA skipped: fewer than two groups with data"
        else:
            try:
                result = anova_oneway(list(nonempty.values()))
                test = {"f": result.f, "df_between": result.df_between,
                        "df_within": result.df_within, "p": result.p}
            except StatsError as exc:
                note = f"ANOVA skipped: {exc}"
        distances.append(DistanceSection(title, groups, test, note))

    notes = [
        "SP/LP denominators include compiled repairs only.",
        f"SP/LP labels: {provenance}.",
    ]
    if lp_requires_sp:
        notes.append("LP tables exclude repairs with SP = 0.")
    return AnalysisReport(
        n_records=len(records),
        provenance=provenance,
        sections=sections,
        distances=distances,
        notes=notes,
    )
