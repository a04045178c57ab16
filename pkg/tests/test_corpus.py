import csv
import json

import pytest

from codemend.corpus import (
    CompileStatus,
    IngestError,
    SamplingError,
    export,
    ingest,
    load_problems,
    sample_uncompilable,
)


def write_csv(path, rows, header=("id", "student_id", "problem_id", "code")):
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def test_ingest_well_formed_csv(tmp_path):
    path = tmp_path / "corpus.csv"
    write_csv(path, [
        ["s1", "stu1", "P1", "int x = 1;"],
        ["s2", "stu1", "P2", "int y = 2;"],
        ["s3", "stu2", "P1", "int z = 3;"],
    ])
    corpus = ingest(path, "csv")
    assert len(corpus) == 3
    assert corpus.by_id["s2"].problem_id == "P2"
    assert corpus.by_id["s1"].compile_status is CompileStatus.UNKNOWN


def test_missing_code_names_row(tmp_path):
    path = tmp_path / "corpus.csv"
    write_csv(path, [
        ["s1", "stu1", "P1", "int x = 1;"],
        ["s2", "stu1", "P1", ""],
        ["s3", "stu2", "P1", "int z;"],
    ])
    with pytest.raises(IngestError, match="row 2.*code"):
        ingest(path, "csv")


def test_duplicate_id_rejected(tmp_path):
    path = tmp_path / "corpus.csv"
    write_csv(path, [
        ["s1", "stu1", "P1", "int x;"],
        ["s1", "stu2", "P1", "int y;"],
    ])
    with pytest.raises(IngestError, match="duplicate submission id"):
        ingest(path, "csv")


def test_multiline_quoted_code_round_trips_exactly(tmp_path):
    source = 'public int f() {\n    return "a,b\nc";\n}\n'
    path = tmp_path / "corpus.csv"
    write_csv(path, [["s1", "stu1", "P1", source]])
    corpus = ingest(path, "csv")
    assert corpus.by_id["s1"].source == source

    out = tmp_path / "round.csv"
    export(corpus, out, "csv")
    again = ingest(out, "csv")
    assert again.by_id["s1"].source == source
    assert again == corpus


def test_jsonl_round_trip(tmp_path):
    path = tmp_path / "corpus.jsonl"
    rows = [
        {"id": "a", "student_id": "s", "problem_id": "P1",
         "code": "int x;\nint y;", "compile_status": "uncompilable", "score": 0.5},
        {"id": "b", "student_id": "s", "problem_id": "P2", "code": "x", "timestamp": "2019-02-01"},
    ]
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")
    corpus = ingest(path, "jsonl")
    assert corpus.by_id["a"].compile_status is CompileStatus.UNCOMPILABLE
    assert corpus.by_id["a"].score == 0.5
    assert corpus.by_id["b"].submitted_at == "2019-02-01"

    out = tmp_path / "round.jsonl"
    export(corpus, out, "jsonl")
    assert ingest(out, "jsonl") == corpus


def test_bad_score_and_status_rejected(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text(json.dumps({"id": "a", "student_id": "s", "problem_id": "P",
                                "code": "x", "score": 1.5}) + "\n")
    with pytest.raises(IngestError, match="score"):
        ingest(path, "jsonl")
    path.write_text(json.dumps({"id": "a", "student_id": "s", "problem_id": "P",
                                "code": "x", "compile_status": "maybe"}) + "\n")
    with pytest.raises(IngestError, match="compile_status"):
        ingest(path, "jsonl")


def _corpus_with_statuses(tmp_path, n_per_problem=60):
    path = tmp_path / "big.jsonl"
    rows = []
    for pid in ("P1", "P2"):
        for i in range(n_per_problem):
            status = "uncompilable" if i % 2 == 0 else "compilable"
            rows.append({"id": f"{pid}-{i}", "student_id": f"stu{i % 7}",
                         "problem_id": pid, "code": f"int x = {i}", "compile_status": status})
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")
    return ingest(path, "jsonl")


def test_sampling_deterministic(tmp_path):
    corpus = _corpus_with_statuses(tmp_path)
    first = sample_uncompilable(corpus, {"P1", "P2"}, 40, seed=9)
    second = sample_uncompilable(corpus, {"P1", "P2"}, 40, seed=9)
    assert [s.id for s in first] == [s.id for s in second]
    different = sample_uncompilable(corpus, {"P1", "P2"}, 40, seed=10)
    assert [s.id for s in first] != [s.id for s in different]


def test_sampling_without_replacement(tmp_path):
    corpus = _corpus_with_statuses(tmp_path)
    sample = sample_uncompilable(corpus, {"P1", "P2"}, 55, seed=1)
    ids = [s.id for s in sample]
    assert len(ids) == len(set(ids)) == 55
    assert all(s.compile_status is CompileStatus.UNCOMPILABLE for s in sample)


def test_sampling_n_zero(tmp_path):
    corpus = _corpus_with_statuses(tmp_path)
    assert sample_uncompilable(corpus, {"P1"}, 0, seed=1) == []


def test_sampling_insufficient_reports_available(tmp_path):
    corpus = _corpus_with_statuses(tmp_path)
    with pytest.raises(SamplingError) as err:
        sample_uncompilable(corpus, {"P1"}, 1000, seed=1)
    assert err.value.available == 30
    assert "30" in str(err.value)


def test_unknown_status_classified_lazily(tmp_path):
    path = tmp_path / "u.jsonl"
    rows = [
        {"id": "ok", "student_id": "s", "problem_id": "P1", "code": "int x = 1;"},
        {"id": "broken", "student_id": "s", "problem_id": "P1", "code": "int x = 1"},
    ]
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")
    corpus = ingest(path, "jsonl")
    seen = []

    def classify(source):
        seen.append(source)
        return source.endswith(";")

    sample = sample_uncompilable(corpus, {"P1"}, 1, seed=0, classify=classify)
    assert [s.id for s in sample] == ["broken"]
    assert len(seen) == 2


def test_default_classifier_uses_internal_parse(tmp_path):
    path = tmp_path / "u.jsonl"
    rows = [
        {"id": "ok", "student_id": "s", "problem_id": "P1", "code": "int x = 1;"},
        {"id": "broken", "student_id": "s", "problem_id": "P1",
         "code": "public int f(){return 1;"},
    ]
    path.write_text("\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8")
    sample = sample_uncompilable(ingest(path, "jsonl"), {"P1"}, 1, seed=0)
    assert [s.id for s in sample] == ["broken"]


def test_stratified_sampling_splits_evenly(tmp_path):
    corpus = _corpus_with_statuses(tmp_path)
    sample = sample_uncompilable(corpus, {"P1", "P2"}, 20, seed=4, stratify=True)
    by_problem = {}
    for s in sample:
        by_problem[s.problem_id] = by_problem.get(s.problem_id, 0) + 1
    assert by_problem == {"P1": 10, "P2": 10}


def test_load_problems(tmp_path):
    payload = [{"id": "P1", "statement": "Sum the numbers.",
                "fewshot": [{"broken": "a", "repaired": "b", "label": "good"}]}]
    path = tmp_path / "problems.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    problems = load_problems(path)
    assert problems["P1"].statement == "Sum the numbers."
    assert problems["P1"].fewshot_examples[0].label == "good"


def test_load_problems_rejects_identical_fewshot_pair(tmp_path):
    payload = [{"id": "P1", "statement": "x",
                "fewshot": [{"broken": "same", "repaired": "same"}]}]
    path = tmp_path / "problems.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    with pytest.raises(IngestError, match="identical"):
        load_problems(path)


def test_missing_file_and_bad_format(tmp_path):
    with pytest.raises(IngestError, match="not found"):
        ingest(tmp_path / "nope.csv", "csv")
    path = tmp_path / "x.csv"
    write_csv(path, [["s1", "stu", "P", "code"]])
    with pytest.raises(IngestError, match="format"):
        ingest(path, "xml")
