import type { Agreement, AnnotationAck, AnnotationPayload, RecordDetail, Task } from "./types";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    message: string,
    public status: number,
    public detail?: unknown,
  ) {
    super(message);
  }
}

/** Thin typed wrapper over the annotation service endpoints. */
export class ApiClient {
  constructor(
    private baseUrl: string,
    public annotator: string,
    private token?: string,
    private fetchFn: FetchLike = (...args) => fetch(...args),
  ) {}

  private headers(): Record<string, string> {
    const headers: Record<string, string> = { "Content-Type": "application/json" };
    if (this.token) {
      headers["X-Annotator-Token"] = this.token;
    }
    return headers;
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, {
        ...init,
        headers: { ...this.headers(), ...(init?.headers ?? {}) },
      });
    } catch (err) {
      throw new ApiError(`network failure: ${String(err)}`, 0);
    }
    const body = await response.json().catch(() => null);
    if (!response.ok) {
      const detail = body && typeof body === "object" ? (body as { detail?: unknown }).detail : undefined;
      throw new ApiError(`HTTP ${response.status}`, response.status, detail);
    }
    return body as T;
  }

  nextTask(round: number): Promise<Task> {
    const params = new URLSearchParams({ annotator: this.annotator, round: String(round) });
    return this.request<Task>(`/api/tasks/next?${params}`);
  }

  submitAnnotation(payload: AnnotationPayload): Promise<AnnotationAck> {
    return this.request<AnnotationAck>("/api/annotations", {
      method: "POST",
      body: JSON.stringify(payload),
    });
  }

  agreement(round: number): Promise<Agreement> {
    return this.request<Agreement>(`/api/agreement?round=${round}`);
  }

  record(recordId: string): Promise<RecordDetail> {
    return this.request<RecordDetail>(`/api/records/${encodeURIComponent(recordId)}`);
  }
}
