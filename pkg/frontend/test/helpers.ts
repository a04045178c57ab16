import type { FetchLike } from "../src/api";
import type { Agreement, AnnotationPayload, Task } from "../src/types";
import type { LabelState, ReviewView, SubmittedItem } from "../src/review";

export function makeTask(i: number, round = 1, poolSize = 20): Task {
  const original = `int x${i} = ${i}\nreturn x${i};`;
  const repaired = `int x${i} = ${i};\nreturn x${i};`;
  const insertAt = original.indexOf("\n");
  return {
    done: false,
    record_id: `sub${String(i).padStart(3, "0")}::rules-mock::low`,
    round,
    pool_size: poolSize,
    completed: i,
    original,
    repaired,
    compiled: true,
    sp_suggest: "preserved",
    lp_suggest: "syntactic_only",
    diff_spans: [
      { op: "equal", a0: 0, a1: insertAt, b0: 0, b1: insertAt },
      { op: "insert", a0: insertAt, a1: insertAt, b0: insertAt, b1: insertAt + 1 },
      {
        op: "equal",
        a0: insertAt,
        a1: original.length,
        b0: insertAt + 1,
        b1: repaired.length,
      },
    ],
  };
}

export function doneTask(round = 1, poolSize = 20): Task {
  return {
    done: true,
    record_id: null,
    round,
    pool_size: poolSize,
    completed: poolSize,
    original: null,
    repaired: null,
    compiled: null,
    sp_suggest: null,
    lp_suggest: null,
    diff_spans: [],
  };
}

/**
 * A recorded annotation service behind the fetch interface: serves a
 * fixed task list in order, stores posted annotations, rejects
 * duplicates with 409, and replays a fixed agreement payload.
 */
export class RecordedService {
  posted: AnnotationPayload[] = [];
  failNextPost = false;
  failNextGet = false;

  constructor(
    private tasks: Task[],
    private agreementPayload?: Agreement,
  ) {}

  private json(status: number, body: unknown): Response {
    return new Response(JSON.stringify(body), {
      status,
      headers: { "Content-Type": "application/json" },
    });
  }

  fetch: FetchLike = async (url, init) => {
    const method = init?.method ?? "GET";
    if (url.includes("/api/tasks/next")) {
      if (this.failNextGet) {
        this.failNextGet = false;
        throw new TypeError("fetch failed");
      }
      const next = this.tasks.find(
        (t) => !this.posted.some((p) => p.record_id === t.record_id),
      );
      return this.json(200, next ?? doneTask(1, this.tasks.length));
    }
    if (url.includes("/api/annotations") && method === "POST") {
      if (this.failNextPost) {
        this.failNextPost = false;
        throw new TypeError("fetch failed");
      }
      const payload = JSON.parse(String(init?.body)) as AnnotationPayload;
      const existing = this.posted.find(
        (p) =>
          p.record_id === payload.record_id &&
          p.annotator_id === payload.annotator_id &&
          p.round === payload.round,
      );
      if (existing) {
        return this.json(409, {
          detail: { message: "duplicate annotation", existing },
        });
      }
      this.posted.push(payload);
      return this.json(201, { ...payload, noted_at: "2026-01-01T00:00:00Z" });
    }
    if (url.includes("/api/agreement")) {
      if (!this.agreementPayload) {
        return this.json(409, { detail: "no overlap" });
      }
      return this.json(200, this.agreementPayload);
    }
    return this.json(404, { detail: "unknown path" });
  };
}

export class StubView implements ReviewView {
  rendered: Array<{ kind: string; recordId?: string | null; labels?: LabelState; message?: string }> = [];

  renderTask(task: Task, labels: LabelState): void {
    this.rendered.push({ kind: "task", recordId: task.record_id, labels });
  }

  renderDone(task: Task): void {
    this.rendered.push({ kind: "done", recordId: null });
  }

  renderUndo(item: SubmittedItem): void {
    this.rendered.push({ kind: "undo", recordId: item.task.record_id });
  }

  renderError(message: string, pending: LabelState): void {
    this.rendered.push({ kind: "error", message, labels: pending });
  }

  last(): { kind: string; recordId?: string | null; labels?: LabelState; message?: string } {
    return this.rendered[this.rendered.length - 1];
  }
}
