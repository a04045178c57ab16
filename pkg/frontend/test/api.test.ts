import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api";

describe("api client", () => {
  it("builds urls and sends the annotator token header", async () => {
    const calls: Array<{ url: string; init?: RequestInit }> = [];
    const client = new ApiClient("http://svc", "a1", "secret", async (url, init) => {
      calls.push({ url, init });
      return new Response(JSON.stringify({ done: true }), { status: 200 });
    });
    await client.nextTask(3);
    expect(calls[0].url).toBe("http://svc/api/tasks/next?annotator=a1&round=3");
    const headers = calls[0].init?.headers as Record<string, string>;
    expect(headers["X-Annotator-Token"]).toBe("secret");
  });

  it("wraps http errors with status and detail", async () => {
    const client = new ApiClient("", "a1", undefined, async () =>
      new Response(JSON.stringify({ detail: { message: "duplicate annotation" } }),
        { status: 409 }));
    try {
      await client.submitAnnotation({
        record_id: "r", annotator_id: "a1", sp: 1, lp: 1, round: 1,
      });
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(409);
      expect((err as ApiError).detail).toMatchObject({ message: "duplicate annotation" });
    }
  });

  it("maps network failures to status 0", async () => {
    const client = new ApiClient("", "a1", undefined, async () => {
      throw new TypeError("fetch failed");
    });
    await expect(client.nextTask(1)).rejects.toMatchObject({ status: 0 });
  });
});
