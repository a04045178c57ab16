import { escapeHtml } from "./diff";
import type { Agreement, PairAgreement } from "./types";

// Kappa values come straight from the service and are displayed
// verbatim; the client never recomputes agreement. A pair is flagged
// whenever either kappa fails to exceed the threshold.

export interface PairCell {
  pair: string;
  nItems: number;
  spKappa: number | null;
  lpKappa: number | null;
  spFlagged: boolean;
  lpFlagged: boolean;
}

export function pairCells(agreement: Agreement): PairCell[] {
  return agreement.pairs.map((p: PairAgreement) => ({
    pair: `${p.annotator_a} / ${p.annotator_b}`,
    nItems: p.n_items,
    spKappa: p.sp_kappa,
    lpKappa: p.lp_kappa,
    spFlagged: p.sp_kappa === null || p.sp_kappa <= agreement.threshold,
    lpFlagged: p.lp_kappa === null || p.lp_kappa <= agreement.threshold,
  }));
}

export function formatKappa(value: number | null): string {
  return value === null ? "n/a" : String(value);
}

export function renderAgreement(agreement: Agreement): string {
  const gate = agreement.gate_passed
    ? '<span class="gate passed">gate passed</span>'
    : '<span class="gate failed">gate failed</span>';
  const rows = pairCells(agreement)
    .map(
      (cell) => `<tr>
  <td>${escapeHtml(cell.pair)}</td>
  <td>${cell.nItems}</td>
  <td class="${cell.spFlagged ? "kappa flagged" : "kappa"}">${escapeHtml(formatKappa(cell.spKappa))}</td>
  <td class="${cell.lpFlagged ? "kappa flagged" : "kappa"}">${escapeHtml(formatKappa(cell.lpKappa))}</td>
</tr>`,
    )
    .join("\n");
  const empty = agreement.pairs.length === 0
    ? '<p class="empty">No annotator pair has co-annotated items in this round yet.</p>'
    : "";
  return `<div class="agreement">
<h2>Round ${agreement.round} (${escapeHtml(agreement.kind)}) ${gate}</h2>
<p>threshold: agreement must exceed ${agreement.threshold}</p>
<table>
<thead><tr><th>pair</th><th>items</th><th>SP &kappa;</th><th>LP &kappa;</th></tr></thead>
<tbody>
${rows}
</tbody>
</table>
${empty}
</div>`;
}
