import json

import pytest
from fastapi.testclient import TestClient

from codemend.corpus import ingest
from codemend.harness import RecordStore, build_report, load_config, run_experiment
from codemend.service import create_app, resolve_labels
from codemend.service.store import Annotation, calibration_pool, load_annotations

from conftest import make_experiment_workspace


@pytest.fixture
def workspace(tmp_path):
    config_path = make_experiment_workspace(tmp_path, n_submissions=10,
                                            contexts=["low"])
    config = load_config(config_path)
    run_experiment(config)
    corpus = ingest(config.corpus_path, config.corpus_format)
    return {
        "dir": tmp_path / "out",
        "originals": {s.id: s.source for s in corpus},
        "config": config,
    }


@pytest.fixture
def client(workspace):
    app = create_app(workspace["dir"], originals=workspace["originals"])
    return TestClient(app)


def annotate_all(client, annotator, round_no, sp=1, lp=1):
    posted = []
    while True:
        task = client.get("/api/tasks/next",
                          params={"annotator": annotator, "round": round_no}).json()
        if task["done"]:
            return posted
        response = client.post("/api/annotations", json={
            "record_id": task["record_id"],
            "annotator_id": annotator,
            "sp": sp,
            "lp": lp,
            "round": round_no,
        })
        assert response.status_code == 201, response.text
        posted.append(task["record_id"])


def test_health_and_record_count(client):
    body = client.get("/api/health").json()
    assert body == {"status": "ok", "records": 10}


def test_next_task_shape_and_progression(client):
    task = client.get("/api/tasks/next", params={"annotator": "a1", "round": 1}).json()
    assert not task["done"]
    assert task["original"]
    assert task["repaired"]
    assert task["compiled"] is True
    assert task["sp_suggest"] == "preserved"
    assert task["lp_suggest"] == "syntactic_only"
    spans = task["diff_spans"]
    # spans must reconstruct both texts exactly
    orig = "".join(task["original"][s["a0"]:s["a1"]] for s in spans
                   if s["op"] in ("equal", "delete", "replace"))
    rep = "".join(task["repaired"][s["b0"]:s["b1"]] for s in spans
                  if s["op"] in ("equal", "insert", "replace"))
    assert orig == task["original"]
    assert rep == task["repaired"]


def test_tasks_served_in_stable_order_and_shared_pool(client):
    seen_a = annotate_all(client, "a1", 1)
    seen_b = annotate_all(client, "a2", 1)
    assert seen_a == seen_b  # same pool, same order
    pool = calibration_pool(10, 1, 0.10)
    assert len(seen_a) == len(pool) == 1


def test_duplicate_annotation_rejected_with_prior(client):
    task = client.get("/api/tasks/next", params={"annotator": "a1", "round": 1}).json()
    body = {"record_id": task["record_id"], "annotator_id": "a1",
            "sp": 1, "lp": 0, "round": 1}
    assert client.post("/api/annotations", json=body).status_code == 201
    dup = client.post("/api/annotations", json={**body, "sp": 0})
    assert dup.status_code == 409
    assert dup.json()["detail"]["existing"]["sp"] == 1


def test_validation_rejects_out_of_range_labels(client):
    task = client.get("/api/tasks/next", params={"annotator": "a1", "round": 1}).json()
    response = client.post("/api/annotations", json={
        "record_id": task["record_id"], "annotator_id": "a1",
        "sp": 2, "lp": 0, "round": 1})
    assert response.status_code == 422


def test_unknown_record_rejected(client):
    response = client.post("/api/annotations", json={
        "record_id": "nope::x::low", "annotator_id": "a1",
        "sp": 1, "lp": 1, "round": 1})
    assert response.status_code == 404


def test_agreement_identical_labels_gate_passes(client):
    annotate_all(client, "a1", 1)
    annotate_all(client, "a2", 1)
    body = client.get("/api/agreement", params={"round": 1}).json()
    assert body["gate_passed"] is True
    pair = body["pairs"][0]
    assert pair["sp_kappa"] == 1.0
    assert pair["lp_kappa"] == 1.0
    assert body["threshold"] == 0.80


def test_agreement_no_overlap_is_conflict(client):
    annotate_all(client, "a1", 1)
    response = client.get("/api/agreement", params={"round": 1})
    assert response.status_code == 409


def test_gate_strictly_greater_than_threshold(tmp_path, workspace):
    # full round over all 10 records so the kappa matrix has room
    app = create_app(workspace["dir"], originals=workspace["originals"])
    client = TestClient(app)
    client.post("/api/rounds", json={"kind": "full"})
    tasks = []
    while True:
        t = client.get("/api/tasks/next", params={"annotator": "a1", "round": 2}).json()
        if t["done"]:
            break
        tasks.append(t["record_id"])
        client.post("/api/annotations", json={
            "record_id": t["record_id"], "annotator_id": "a1",
            "sp": 1 if len(tasks) % 2 else 0, "lp": 1, "round": 2})
    # a2 matches a1 on sp except for two items: kappa lands below 1
    for i, record_id in enumerate(tasks):
        sp = (1 if (i + 1) % 2 else 0)
        if i < 2:
            sp = 1 - sp
        client.post("/api/annotations", json={
            "record_id": record_id, "annotator_id": "a2",
            "sp": sp, "lp": 1, "round": 2})
    body = client.get("/api/agreement", params={"round": 2}).json()
    pair = body["pairs"][0]
    assert pair["sp_kappa"] < 0.80
    assert body["gate_passed"] is False


def test_kappa_exactly_at_threshold_fails_gate(tmp_path):
    # agreement at exactly 0.80 must NOT pass the strictly-greater gate
    from codemend.stats import cohen_kappa
    a = [0, 1] * 10
    b = [0, 1] * 9 + [1, 0]
    assert cohen_kappa(a, b).kappa == pytest.approx(0.80)
    # strict comparison mirrors the service gate
    assert not (cohen_kappa(a, b).kappa > 0.80)


def test_calibration_pool_size_ten_percent():
    assert len(calibration_pool(600, 1, 0.10)) == 60
    assert len(calibration_pool(10, 1, 0.10)) == 1
    # identical for every caller, fresh per round
    assert calibration_pool(600, 1, 0.10) == calibration_pool(600, 1, 0.10)
    assert calibration_pool(600, 1, 0.10) != calibration_pool(600, 2, 0.10)


def test_rounds_lifecycle(client):
    rounds = client.get("/api/rounds").json()
    assert rounds == [{"round": 1, "kind": "calibration", "fraction": 0.10, "open": True}]
    created = client.post("/api/rounds", json={"kind": "full"}).json()
    assert created == {"round": 2, "kind": "full", "fraction": 0.10, "open": True}
    rounds = client.get("/api/rounds").json()
    assert rounds[0]["open"] is False
    # closed round refuses new work
    task = client.get("/api/tasks/next", params={"annotator": "a1", "round": 1})
    assert task.status_code == 409
    # full round pool covers every record
    t = client.get("/api/tasks/next", params={"annotator": "a1", "round": 2}).json()
    assert t["pool_size"] == 10


def test_progress_endpoint(client):
    annotate_all(client, "a1", 1)
    body = client.get("/api/progress").json()
    assert body["n_records"] == 10
    entry = body["rounds"][0]
    assert entry["by_annotator"] == {"a1": 1}


def test_record_endpoint_round_trips_labels(client):
    task = client.get("/api/tasks/next", params={"annotator": "a1", "round": 1}).json()
    client.post("/api/annotations", json={
        "record_id": task["record_id"], "annotator_id": "a1",
        "sp": 0, "lp": 1, "round": 1, "comment": "looks rewritten"})
    body = client.get(f"/api/records/{task['record_id']}").json()
    assert body["record_id"] == task["record_id"]
    assert body["annotations"][0]["sp"] == 0
    assert body["annotations"][0]["comment"] == "looks rewritten"


def test_token_auth(workspace):
    app = create_app(workspace["dir"], originals=workspace["originals"],
                     annotators={"a1": "secret1"})
    client = TestClient(app)
    no_token = client.get("/api/tasks/next", params={"annotator": "a1", "round": 1})
    assert no_token.status_code == 401
    bad = client.get("/api/tasks/next", params={"annotator": "a1", "round": 1},
                     headers={"X-Annotator-Token": "wrong"})
    assert bad.status_code == 401
    ok = client.get("/api/tasks/next", params={"annotator": "a1", "round": 1},
                    headers={"X-Annotator-Token": "secret1"})
    assert ok.status_code == 200
    unknown = client.get("/api/tasks/next", params={"annotator": "ghost", "round": 1},
                         headers={"X-Annotator-Token": "x"})
    assert unknown.status_code == 404


def test_repair_and_metrics_endpoints(client):
    body = client.post("/api/repair", json={"source": "int x = 1"}).json()
    assert body["repaired_source"] == "int x = 1;"
    assert body["parse_ok_after"] is True
    m = client.post("/api/metrics", json={"original": "int x = 1",
                                          "repaired": "int x = 1;"}).json()
    assert m["raw_levenshtein"] == 1
    assert m["lp_auto"] == "syntactic_only"


def test_human_labels_take_precedence_in_reports(workspace, client):
    annotate_all(client, "a1", 1, sp=0, lp=0)
    annotate_all(client, "a2", 1, sp=0, lp=0)
    store = RecordStore(workspace["dir"] / "records.jsonl")
    records = store.load()
    labels = resolve_labels(load_annotations(workspace["dir"] / "annotations.jsonl"))
    assert labels  # the calibration item got a human label
    report = build_report(records, annotations=labels)
    assert report.provenance == "mixed"
    section = next(s for s in report.sections
                   if s.title == "Structural preservation by context")
    changed = sum(r["changed"] for r in section.rows)
    assert changed == len(labels)  # auto said preserved; humans overrode


def test_resolve_labels_majority_and_latest_round():
    anns = [
        Annotation("r1", "a", 1, 1, 1, ""),
        Annotation("r1", "b", 1, 0, 1, ""),
        Annotation("r1", "c", 0, 0, 1, ""),
        # later round supersedes
        Annotation("r1", "a", 0, 0, 2, ""),
        Annotation("r1", "b", 0, 1, 2, ""),
    ]
    labels = resolve_labels(anns)
    # round 2: sp votes [0,0] -> 0; lp votes [0,1] tie -> 0
    assert labels == {"r1": (0, 0)}
