import { ApiClient } from "./api";
import { renderAgreement } from "./dashboard";
import { renderSideBySide } from "./diff";
import { LabelState, ReviewController, ReviewView, SubmittedItem } from "./review";
import type { Task } from "./types";

// Browser bootstrap: everything testable lives in the other modules.

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function labelText(value: 0 | 1 | null): string {
  return value === null ? "?" : String(value);
}

class DomView implements ReviewView {
  renderTask(task: Task, labels: LabelState): void {
    el("status").textContent =
      `round ${task.round} - item ${task.completed + 1} of ${task.pool_size}`;
    el("record").textContent = task.record_id ?? "";
    const badge = el("compile-badge");
    badge.textContent = task.compiled ? "compiles" : "does not compile";
    badge.className = task.compiled ? "badge ok" : "badge bad";
    const { left, right } = renderSideBySide(
      task.original ?? "", task.repaired ?? "", task.diff_spans);
    el("pane-original").innerHTML = `<pre>${left}</pre>`;
    el("pane-repaired").innerHTML = `<pre>${right}</pre>`;
    el("suggest").textContent =
      `pre-screen: SP ${task.sp_suggest ?? "n/a"}, LP ${task.lp_suggest ?? "n/a"} (suggestion only)`;
    el("labels").textContent =
      `SP: ${labelText(labels.sp)}   LP: ${labelText(labels.lp)}`;
    el("banner").textContent = "";
  }

  renderDone(task: Task): void {
    el("status").textContent = `round ${task.round} complete`;
    el("pane-original").innerHTML = "";
    el("pane-repaired").innerHTML =
      `<p>All ${task.pool_size} items annotated. Press u to review the last one.</p>`;
    el("labels").textContent = "";
    el("banner").textContent = "";
  }

  renderUndo(item: SubmittedItem): void {
    el("banner").textContent =
      `last submitted: ${item.task.record_id} (SP ${item.sp}, LP ${item.lp}); ` +
      "labels are append-only, relabel in the next round. Press any key to continue.";
  }

  renderError(message: string, pending: LabelState): void {
    el("banner").textContent =
      `${message} - nothing was lost (pending SP ${labelText(pending.sp)}, ` +
      `LP ${labelText(pending.lp)}); press Enter to retry`;
  }
}

async function showDashboard(client: ApiClient, round: number): Promise<void> {
  try {
    const agreement = await client.agreement(round);
    el("dashboard").innerHTML = renderAgreement(agreement);
  } catch {
    el("dashboard").innerHTML =
      '<p class="empty">No agreement data for this round yet.</p>';
  }
}

function boot(): void {
  const params = new URLSearchParams(window.location.search);
  const annotator = params.get("annotator") ?? localStorage.getItem("annotator") ?? "";
  const token = params.get("token") ?? localStorage.getItem("token") ?? undefined;
  const round = parseInt(params.get("round") ?? "1", 10);
  if (!annotator) {
    el("banner").textContent = "add ?annotator=<id>&round=<n> to the URL";
    return;
  }
  localStorage.setItem("annotator", annotator);
  if (token) localStorage.setItem("token", token);

  const client = new ApiClient("", annotator, token);
  const controller = new ReviewController(client, new DomView(), round);

  window.addEventListener("keydown", (event: KeyboardEvent) => {
    if (["1", "0", "Enter", "Escape", "u", "r"].includes(event.key)) {
      event.preventDefault();
      void controller.handleKey(event.key);
    }
    if (event.key === "a") {
      void showDashboard(client, round);
    }
  });

  void controller.start();
  void showDashboard(client, round);
}

boot();
