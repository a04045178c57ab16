import type { DiffSpan } from "./types";

// Diff spans arrive from the service (computed next to the metrics code
// so UI and analysis always agree); this module only renders them.

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export interface SideBySide {
  left: string;
  right: string;
}

/**
 * HTML for the two panes: the original with deleted/replaced text
 * marked, the repaired with inserted/replaced text marked.
 */
export function renderSideBySide(
  original: string,
  repaired: string,
  spans: DiffSpan[],
): SideBySide {
  const left: string[] = [];
  const right: string[] = [];
  for (const span of spans) {
    const a = escapeHtml(original.slice(span.a0, span.a1));
    const b = escapeHtml(repaired.slice(span.b0, span.b1));
    switch (span.op) {
      case "equal":
        left.push(a);
        right.push(b);
        break;
      case "delete":
        left.push(`<mark class="del">${a}</mark>`);
        break;
      case "insert":
        right.push(`<mark class="ins">${b}</mark>`);
        break;
      case "replace":
        left.push(`<mark class="del">${a}</mark>`);
        right.push(`<mark class="ins">${b}</mark>`);
        break;
    }
  }
  return { left: left.join(""), right: right.join("") };
}

/** Both texts rebuilt from the spans; used to verify span integrity. */
export function reconstruct(
  original: string,
  repaired: string,
  spans: DiffSpan[],
): { a: string; b: string } {
  let a = "";
  let b = "";
  for (const span of spans) {
    if (span.op !== "insert") {
      a += original.slice(span.a0, span.a1);
    }
    if (span.op !== "delete") {
      b += repaired.slice(span.b0, span.b1);
    }
  }
  return { a, b };
}
