// Client-side constraint guards. These must never disagree with server
// validation: everything the grid lets through has to be accepted by
// PUT /records/{id}/annotation.

import type { Catalog, Criterion, Features, GroupName } from "./types.js";

export const GROUP_ORDER: GroupName[] = [
  "lexical",
  "grammatical",
  "obsolescence",
  "replacement",
];

export function byOrdinal(catalog: Catalog): Criterion[] {
  return [...catalog.criteria].sort((a, b) => a.ordinal - b.ordinal);
}

export function isHeadless(features: Pick<Features, "is_sentence" | "phrase_structure">): boolean {
  return features.is_sentence || features.phrase_structure === "coordination";
}

/** Codes rendered locked at 0 for a record with these features. */
export function disabledCodes(
  catalog: Catalog,
  features: Pick<Features, "is_sentence" | "phrase_structure">,
): Set<string> {
  if (!isHeadless(features)) return new Set();
  return new Set(catalog.criteria.filter((c) => c.headless_inapplicable).map((c) => c.code));
}

/** The other members of every exclusion pair containing `code`. */
export function exclusionPartners(catalog: Catalog, code: string): string[] {
  const partners: string[] = [];
  for (const pair of catalog.exclusion_pairs) {
    if (pair.includes(code)) {
      for (const other of pair) if (other !== code) partners.push(other);
    }
  }
  return partners;
}

export function groupMax(catalog: Catalog, group: GroupName): number {
  const members = new Set(
    catalog.criteria.filter((c) => c.group === group).map((c) => c.code),
  );
  let internal = 0;
  for (const pair of catalog.exclusion_pairs) {
    if (pair.every((code) => members.has(code))) internal += 1;
  }
  return members.size - internal;
}
