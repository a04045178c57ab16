import { ApiClient, ApiError } from "./api";
import type { AnnotationPayload, Task } from "./types";

// Keyboard-first review loop: the keys 1/0 set SP first, then LP;
// Enter posts and advances. Labels never land anywhere until Enter,
// so the pre-screen suggestions shown in the panel are suggestions
// only. 'u' re-opens the last submitted item read-only, 'Escape'
// clears the current labels.

export interface LabelState {
  sp: 0 | 1 | null;
  lp: 0 | 1 | null;
}

export interface SubmittedItem {
  task: Task;
  sp: 0 | 1;
  lp: 0 | 1;
}

export interface ReviewView {
  renderTask(task: Task, labels: LabelState): void;
  renderDone(task: Task): void;
  renderUndo(item: SubmittedItem): void;
  renderError(message: string, pending: LabelState): void;
}

export class ReviewController {
  private task: Task | null = null;
  private labels: LabelState = { sp: null, lp: null };
  private lastSubmitted: SubmittedItem | null = null;
  private showingUndo = false;
  readonly submitted: AnnotationPayload[] = [];

  constructor(
    private client: ApiClient,
    private view: ReviewView,
    private round: number,
  ) {}

  get currentLabels(): LabelState {
    return { ...this.labels };
  }

  async start(): Promise<void> {
    await this.advance();
  }

  private async advance(): Promise<void> {
    this.labels = { sp: null, lp: null };
    this.showingUndo = false;
    try {
      const task = await this.client.nextTask(this.round);
      this.task = task;
      if (task.done) {
        this.view.renderDone(task);
      } else {
        this.view.renderTask(task, this.currentLabels);
      }
    } catch (err) {
      this.task = null;
      this.view.renderError(describe(err), this.currentLabels);
    }
  }

  async handleKey(key: string): Promise<void> {
    if (this.showingUndo) {
      // any key leaves the read-only undo view
      this.showingUndo = false;
      if (this.task && !this.task.done) {
        this.view.renderTask(this.task, this.currentLabels);
      }
      return;
    }
    if (this.task === null) {
      if (key === "Enter" || key === "r") {
        await this.retry();
      }
      return;
    }
    if (this.task.done) {
      if (key === "u") {
        this.showUndo();
      }
      return;
    }
    if (key === "1" || key === "0") {
      const value = key === "1" ? 1 : 0;
      if (this.labels.sp === null) {
        this.labels.sp = value;
      } else if (this.labels.lp === null) {
        this.labels.lp = value;
      }
      this.view.renderTask(this.task, this.currentLabels);
      return;
    }
    if (key === "Escape") {
      this.labels = { sp: null, lp: null };
      this.view.renderTask(this.task, this.currentLabels);
      return;
    }
    if (key === "u") {
      this.showUndo();
      return;
    }
    if (key === "Enter") {
      await this.submit();
    }
  }

  private showUndo(): void {
    if (this.lastSubmitted) {
      this.showingUndo = true;
      this.view.renderUndo(this.lastSubmitted);
    }
  }

  private async retry(): Promise<void> {
    // called after a failed fetch; pending labels were never lost
    if (this.task === null) {
      await this.advanceKeepingLabels();
    } else {
      await this.submit();
    }
  }

  private async advanceKeepingLabels(): Promise<void> {
    try {
      const task = await this.client.nextTask(this.round);
      this.task = task;
      if (task.done) {
        this.view.renderDone(task);
      } else {
        this.view.renderTask(task, this.currentLabels);
      }
    } catch (err) {
      this.view.renderError(describe(err), this.currentLabels);
    }
  }

  private async submit(): Promise<void> {
    const task = this.task;
    if (task === null || task.done || task.record_id === null) {
      return;
    }
    if (this.labels.sp === null || this.labels.lp === null) {
      return; // both judgments required before posting
    }
    const payload: AnnotationPayload = {
      record_id: task.record_id,
      annotator_id: this.client.annotator,
      sp: this.labels.sp,
      lp: this.labels.lp,
      round: this.round,
    };
    try {
      await this.client.submitAnnotation(payload);
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        // duplicate: the server already has this one; move on
        await this.advance();
        return;
      }
      // keep the pending labels so nothing is lost; Enter retries
      this.view.renderError(describe(err), this.currentLabels);
      return;
    }
    this.submitted.push(payload);
    this.lastSubmitted = { task, sp: payload.sp, lp: payload.lp };
    await this.advance();
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    return err.status === 0 ? err.message : `service error (${err.status})`;
  }
  return String(err);
}
