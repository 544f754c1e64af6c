// Annotation grid state: 16 toggle cells under the four group headers, with
// live totals and the constraint guards applied on every interaction.

import { byOrdinal, disabledCodes, exclusionPartners, GROUP_ORDER } from "./guards.js";
import type { Catalog, Cell, Features, GroupName, Violation } from "./types.js";

export interface GridState {
  cells: Cell[]; // by ordinal - 1
  disabled: Set<string>;
  /** Code cleared automatically by the exclusion guard on the last toggle. */
  autoCleared: string | null;
  /** Violations reported by the server for the last rejected submit. */
  violations: Violation[];
}

function ordinalOf(catalog: Catalog, code: string): number {
  const found = catalog.criteria.find((c) => c.code === code);
  if (!found) throw new Error(`unknown criterion code: ${code}`);
  return found.ordinal;
}

/** Build a grid from a record's cells, sanitizing anything the guards would
 *  never allow: unset or non-binary cells drop to 0, disabled cells are
 *  clamped to 0, and exclusion pairs keep only their lowest-ordinal member. */
export function createGrid(
  catalog: Catalog,
  features: Pick<Features, "is_sentence" | "phrase_structure">,
  initialCells: (number | null)[],
): GridState {
  const disabled = disabledCodes(catalog, features);
  const cells: Cell[] = byOrdinal(catalog).map((criterion) => {
    const value = initialCells[criterion.ordinal - 1];
    if (value !== 1) return 0;
    return disabled.has(criterion.code) ? 0 : 1;
  });
  for (const pair of catalog.exclusion_pairs) {
    const on = pair
      .map((code) => ordinalOf(catalog, code))
      .sort((a, b) => a - b)
      .filter((ordinal) => cells[ordinal - 1] === 1);
    for (const ordinal of on.slice(1)) cells[ordinal - 1] = 0;
  }
  return { cells, disabled, autoCleared: null, violations: [] };
}

/** Flip one cell. Disabled cells are inert; switching a cell on clears any
 *  exclusion partner that was on (the grid mirrors the validator). */
export function toggle(catalog: Catalog, state: GridState, code: string): GridState {
  if (state.disabled.has(code)) return state;
  const ordinal = ordinalOf(catalog, code);
  const cells = [...state.cells];
  let autoCleared: string | null = null;
  if (cells[ordinal - 1] === 1) {
    cells[ordinal - 1] = 0;
  } else {
    cells[ordinal - 1] = 1;
    for (const partner of exclusionPartners(catalog, code)) {
      const partnerOrdinal = ordinalOf(catalog, partner);
      if (cells[partnerOrdinal - 1] === 1) {
        cells[partnerOrdinal - 1] = 0;
        autoCleared = partner;
      }
    }
  }
  return { ...state, cells, autoCleared, violations: [] };
}

export function gridTotal(state: GridState): number {
  return state.cells.reduce<number>((sum, cell) => sum + cell, 0);
}

export function groupSums(catalog: Catalog, state: GridState): Record<GroupName, number> {
  const sums = Object.fromEntries(GROUP_ORDER.map((g) => [g, 0])) as Record<GroupName, number>;
  for (const criterion of catalog.criteria) {
    sums[criterion.group] += state.cells[criterion.ordinal - 1];
  }
  return sums;
}

export function withViolations(state: GridState, violations: Violation[]): GridState {
  return { ...state, violations };
}
