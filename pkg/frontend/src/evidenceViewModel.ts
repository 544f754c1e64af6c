// Turns an evidence report into display rows and suggestion badges. The
// badges are advisory: nothing here ever writes back into the grid.

import type { EvidenceReport } from "./types.js";

export interface Badge {
  code: string;
  kind: "supports_1" | "supports_0" | "inconclusive";
  label: string;
}

export function suggestionBadges(report: EvidenceReport): Badge[] {
  const badges: Badge[] = [];
  for (const [code, suggestion] of Object.entries(report.suggestions)) {
    let label: string;
    if (suggestion === "supports_1") {
      label =
        report.check === "insertion"
          ? `no insertions attested — consider ${code}=1`
          : `single attested form — consider ${code}=1`;
    } else if (suggestion === "supports_0") {
      label =
        report.check === "insertion"
          ? `insertions attested — consider ${code}=0`
          : `form variation attested — consider ${code}=0`;
    } else {
      label = `no usable evidence for ${code}`;
    }
    badges.push({ code, kind: suggestion as Badge["kind"], label });
  }
  return badges.sort((a, b) => a.code.localeCompare(b.code));
}

/** Rows for the raw-vs-effective hits table; single hits get the
 *  occasional-use annotation so the zeroing is visible. */
export interface QueryRow {
  query: string;
  raw: number;
  effective: number;
  note: string;
}

export function queryRows(report: EvidenceReport): QueryRow[] {
  return report.queries.map((q) => ({
    query: q.query,
    raw: q.raw_hits,
    effective: q.effective_hits,
    note: q.raw_hits === 1 && q.effective_hits === 0 ? "occasional (counts as 0)" : "",
  }));
}
