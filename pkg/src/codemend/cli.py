"""Command line interface. The commands are thin wrappers over the
library; everything they do is importable.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import CodemendError
from .compilecheck import Backend, check
from .corpus import export, ingest, sample_uncompilable
from .harness import RecordStore, build_report, load_config, run_experiment
from .javasyn import check_balance, extract_skeleton, parse_check, tokenize
from .javasyn.parse import SkeletonError
from .metrics import compute_repair_metrics
from .repair_rules import repair as rule_repair
from .service.store import load_annotations, resolve_labels
from .stats import ContingencyTable, anova_oneway, chi_square, cohen_kappa


@click.group()
def main() -> None:
    """Syntax-only repair and evaluation toolkit for student Java code."""


@main.command("ingest")
@click.argument("path", type=click.Path(exists=True))
@click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), required=True)
@click.option("--out", type=click.Path(), default=None,
              help="Write the corpus back out as normalized JSONL.")
def ingest_cmd(path: str, fmt: str, out: str | None) -> None:
    """Validate and load a submission corpus."""
    corpus = ingest(path, fmt)
    statuses: dict[str, int] = {}
    for sub in corpus:
        statuses[sub.compile_status.value] = statuses.get(sub.compile_status.value, 0) + 1
    click.echo(f"loaded {len(corpus)} submissions "
               f"({', '.join(f'{k}: {v}' for k, v in sorted(statuses.items()))})")
    if out:
        export(corpus, out, "jsonl")
        click.echo(f"wrote {out}")


@main.command("sample")
@click.option("--corpus", "corpus_path", type=click.Path(exists=True), required=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "jsonl"]), required=True)
@click.option("--problems", required=True, help="Comma-separated problem ids.")
@click.option("--n", type=int, required=True)
@click.option("--seed", type=int, required=True)
@click.option("--stratify", is_flag=True, default=False,
              help="Split the sample evenly across problems.")
@click.option("--out", type=click.Path(), default=None)
def sample_cmd(corpus_path: str, fmt: str, problems: str, n: int, seed: int,
               stratify: bool, out: str | None) -> None:
    """Draw a reproducible sample of uncompilable submissions."""
    corpus = ingest(corpus_path, fmt)
    picked = sample_uncompilable(corpus, set(problems.split(",")), n, seed,
                                 stratify=stratify)
    lines = [s.id for s in picked]
    if out:
        Path(out).write_text("\n".join(lines) + "\n", encoding="utf-8")
        click.echo(f"wrote {len(lines)} ids to {out}")
    else:
        for line in lines:
            click.echo(line)


@main.command("lex")
@click.argument("file", type=click.Path(exists=True))
def lex_cmd(file: str) -> None:
    """Print the token stream of a Java file."""
    source = Path(file).read_text(encoding="utf-8")
    for tok in tokenize(source):
        reason = f"  ({tok.reason})" if tok.reason else ""
        click.echo(f"{tok.line}:{tok.col}\t{tok.kind.value}\t{tok.lexeme!r}{reason}")


@main.command("skeleton")
@click.argument("file", type=click.Path(exists=True))
def skeleton_cmd(file: str) -> None:
    """Print the control-flow skeleton of a Java file."""
    source = Path(file).read_text(encoding="utf-8")
    try:
        click.echo(extract_skeleton(source).render())
    except SkeletonError as exc:
        raise click.ClickException(f"skeleton extraction failed: {exc}")


@main.command("repair")
@click.argument("file", type=click.Path(exists=True))
@click.option("--engine", type=click.Choice(["rules"]), default="rules")
@click.option("--fixes-out", type=click.Path(), default=None,
              help="Write applied fixes to a JSON sidecar.")
def repair_cmd(file: str, engine: str, fixes_out: str | None) -> None:
    """Repair a file; repaired source goes to stdout."""
    source = Path(file).read_text(encoding="utf-8")
    outcome = rule_repair(source)
    sys.stdout.write(outcome.repaired_source)
    if fixes_out:
        payload = {
            "parse_ok_after": outcome.parse_ok_after,
            "fixes": [f.to_dict() for f in outcome.applied_fixes],
        }
        Path(fixes_out).write_text(json.dumps(payload, indent=2), encoding="utf-8")


@main.command("compile")
@click.argument("file", type=click.Path(exists=True))
@click.option("--backend", type=click.Choice([b.value for b in Backend]),
              default=Backend.INTERNAL_PARSE.value)
@click.option("--compiler", default="javac")
@click.option("--timeout", type=float, default=30.0)
def compile_cmd(file: str, backend: str, compiler: str, timeout: float) -> None:
    """Check whether a file compiles; exit status 1 when it does not."""
    source = Path(file).read_text(encoding="utf-8")
    diag = check(source, backend, compiler=compiler, timeout=timeout)
    click.echo(json.dumps(diag.to_dict(), indent=2))
    if not diag.ok:
        sys.exit(1)


@main.command("balance")
@click.argument("file", type=click.Path(exists=True))
def balance_cmd(file: str) -> None:
    """Report unmatched delimiters in a file."""
    source = Path(file).read_text(encoding="utf-8")
    report = check_balance(tokenize(source))
    for defect in report.defects:
        click.echo(f"{defect.line}:{defect.col}\t{defect.kind}\t{defect.delimiter!r}"
                   f"\tinsert {defect.insert_text!r} at {defect.suggested_insert_position}")
    if report.ok:
        click.echo("balanced")


@main.command("metrics")
@click.argument("original", type=click.Path(exists=True))
@click.argument("repaired", type=click.Path(exists=True))
def metrics_cmd(original: str, repaired: str) -> None:
    """Edit distance and SP/LP pre-screens for a repair pair."""
    orig = Path(original).read_text(encoding="utf-8")
    rep = Path(repaired).read_text(encoding="utf-8")
    compiled = parse_check(rep).ok
    click.echo(json.dumps(compute_repair_metrics(orig, rep, compiled).to_dict()))


@main.group("stats")
def stats_group() -> None:
    """Chi-square, ANOVA and kappa from JSON inputs."""


@stats_group.command("chi2")
@click.option("--table", required=True, help='Counts as JSON, e.g. "[[197,3],[192,8]]".')
def chi2_cmd(table: str) -> None:
    result = chi_square(ContingencyTable.from_counts(json.loads(table)))
    click.echo(json.dumps({"statistic": result.statistic, "df": result.df,
                           "p": result.p, "n": result.n}))


@stats_group.command("anova")
@click.option("--groups", required=True, help='Groups as JSON, e.g. "[[1,2],[3,4]]".')
def anova_cmd(groups: str) -> None:
    result = anova_oneway(json.loads(groups))
    click.echo(json.dumps({"f": result.f, "df_between": result.df_between,
                           "df_within": result.df_within, "p": result.p}))


@stats_group.command("kappa")
@click.option("--a", "labels_a", required=True, help="First rater's labels as JSON.")
@click.option("--b", "labels_b", required=True, help="Second rater's labels as JSON.")
def kappa_cmd(labels_a: str, labels_b: str) -> None:
    result = cohen_kappa(json.loads(labels_a), json.loads(labels_b))
    click.echo(json.dumps({"kappa": result.kappa,
                           "observed_agreement": result.observed_agreement,
                           "expected_agreement": result.expected_agreement,
                           "degenerate": result.degenerate}))


@main.command("run")
@click.option("--config", "config_path", type=click.Path(exists=True), required=True)
def run_cmd(config_path: str) -> None:
    """Run (or resume) an experiment from a JSON config file."""
    config = load_config(config_path)
    summary = run_experiment(config)
    click.echo(f"records: {summary.total_records} "
               f"(new: {summary.new_records}, resumed past: {summary.skipped_existing})")
    for cond in sorted(summary.by_condition):
        counts = summary.by_condition[cond]
        click.echo(f"  {cond}: {counts['records']} records, "
                   f"{counts['compiled']} compiled, {counts['failures']} agent failures")
    click.echo(f"store: {summary.records_path}")


@main.command("report")
@click.option("--records", "records_dir", type=click.Path(exists=True), required=True)
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="text")
@click.option("--annotations", "annotations_path", type=click.Path(), default=None,
              help="Annotation JSONL; human labels override auto pre-screens.")
@click.option("--normalized", is_flag=True, default=False,
              help="Use normalized rather than raw edit distance.")
@click.option("--lp-requires-sp", is_flag=True, default=False,
              help="Exclude SP=0 repairs from LP tables.")
def report_cmd(records_dir: str, fmt: str, annotations_path: str | None,
               normalized: bool, lp_requires_sp: bool) -> None:
    """Build the analysis tables from a record store."""
    store = RecordStore(Path(records_dir) / "records.jsonl")
    records = store.load()
    annotations = None
    if annotations_path:
        annotations = resolve_labels(load_annotations(annotations_path))
    elif (Path(records_dir) / "annotations.jsonl").exists():
        annotations = resolve_labels(load_annotations(Path(records_dir) / "annotations.jsonl"))
    report = build_report(records, annotations=annotations,
                          use_normalized=normalized, lp_requires_sp=lp_requires_sp)
    if fmt == "json":
        click.echo(json.dumps(report.to_dict(), indent=2))
    else:
        click.echo(report.render_text())


@main.command("serve")
@click.option("--records", "records_dir", type=click.Path(exists=True), required=True)
@click.option("--port", type=int, default=8077)
@click.option("--host", default="127.0.0.1")
@click.option("--annotators", "annotators_path", type=click.Path(), default=None,
              help='JSON file: [{"id": "a1", "token": "secret"}, ...].')
@click.option("--corpus", "corpus_path", type=click.Path(), default=None,
              help="Corpus file for original source display.")
@click.option("--corpus-format", type=click.Choice(["csv", "jsonl"]), default="jsonl")
@click.option("--static", "static_dir", type=click.Path(), default=None,
              help="Directory with the annotation UI bundle.")
def serve_cmd(records_dir: str, port: int, host: str, annotators_path: str | None,
              corpus_path: str | None, corpus_format: str,
              static_dir: str | None) -> None:
    """Serve the annotation workbench API (and UI, when built)."""
    import uvicorn

    from .service import create_app

    annotators = None
    if annotators_path:
        entries = json.loads(Path(annotators_path).read_text(encoding="utf-8"))
        annotators = {e["id"]: e["token"] for e in entries}
    originals = None
    if corpus_path:
        corpus = ingest(corpus_path, corpus_format)
        originals = {s.id: s.source for s in corpus}
    app = create_app(records_dir, annotators=annotators, originals=originals,
                     static_dir=static_dir)
    uvicorn.run(app, host=host, port=port)


def _entry() -> None:
    try:
        main()
    except CodemendError as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    _entry()
