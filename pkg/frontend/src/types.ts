// Wire types for the annotation service. Field names mirror the structured
// dataset format, so payloads can be compared against files directly.

export type GroupName = "lexical" | "grammatical" | "obsolescence" | "replacement";

export interface Criterion {
  ordinal: number;
  code: string;
  group: GroupName;
  name: string;
  headless_inapplicable: boolean;
}

export interface Catalog {
  version: string;
  criteria: Criterion[];
  exclusion_pairs: string[][];
}

export interface Features {
  pos_pattern: string;
  is_sentence: boolean;
  headword: string | null;
  phrase_structure: string;
}

export type Cell = 0 | 1;

export interface RecordData {
  id: string;
  surface: string;
  gloss: string | null;
  source: string | null;
  features: Features;
  cells: (number | null)[];
  cell_notes: Record<string, string>;
  token_stems: [string, string][] | null;
  note: string | null;
}

export interface RecordSummary {
  id: string;
  surface: string;
  gloss: string | null;
  completion: "complete" | "draft";
  total: number | null;
}

export interface Violation {
  rule: string;
  criteria: string[];
  message: string;
}

export interface RecordView {
  record: RecordData;
  completion: "complete" | "draft";
  applicable: string[];
  total: number | null;
  group_vector: Record<GroupName, number> | null;
  draft: {
    cells: (number | null)[];
    cell_notes: Record<string, string>;
    violations: Violation[];
  } | null;
}

export interface QueryStats {
  query: string;
  raw_hits: number;
  effective_hits: number;
}

export interface KwicLine {
  doc: string;
  start: number;
  before: string;
  match: string;
  after: string;
}

export interface EvidenceReport {
  check: "insertion" | "inflection";
  primary: string;
  queries: QueryStats[];
  kwic: KwicLine[];
  suggestions: Record<string, string>;
  realizations: [string, number][];
  notes: string[];
}

export interface CheckResponse {
  id: string;
  report: EvidenceReport;
  cells: Record<string, number>;
}

export interface CubePoint {
  key: [number, number, number];
  count: number;
  held_out_mean: number;
  color_scalar: number;
  member_ids: string[];
}

export interface CubeData {
  axes: GroupName[];
  held_out: GroupName;
  held_out_max: number;
  points: CubePoint[];
}

export interface AnalysisReport {
  n: number;
  histogram: {
    counts: { score: number; count: number }[];
    n: number;
    median_standard: number;
    range_midpoint: number;
    frac_below_median: number;
    frac_below_range_midpoint: number;
  };
  criterion_sums: { counts: Record<string, number>; ranked: string[]; total: number };
  group_totals: {
    totals: Record<GroupName, number>;
    shares: Record<GroupName, number>;
    grand_total: number;
  };
  unique_vectors: { count: number; fraction: number };
  joint_low: { group_a: GroupName; group_b: GroupName; threshold: number; count: number };
  cube: CubeData;
  correlations: { groups: GroupName[]; matrix: (number | null)[][] } | null;
}

export type PutOutcome =
  | { ok: true; id: string; total: number; group_vector: Record<GroupName, number> }
  | { ok: false; id: string; violations: Violation[] };
