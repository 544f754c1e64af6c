import type {
  AnalysisReport,
  Catalog,
  CheckResponse,
  PutOutcome,
  RecordSummary,
  RecordView,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public body: unknown,
    message?: string,
  ) {
    super(message ?? `request failed with status ${status}`);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const res = await fetch(url);
  const body = await res.json();
  if (!res.ok) throw new ApiError(res.status, body, (body as any)?.message);
  return body as T;
}

export class ApiClient {
  constructor(public base: string) {
    this.base = base.replace(/\/+$/, "");
  }

  health(): Promise<{ status: string; records: number; corpus_loaded: boolean }> {
    return getJson(`${this.base}/health`);
  }

  getCatalog(): Promise<Catalog> {
    return getJson(`${this.base}/catalog`);
  }

  async listRecords(): Promise<RecordSummary[]> {
    const body = await getJson<{ records: RecordSummary[] }>(`${this.base}/records`);
    return body.records;
  }

  getRecord(id: string): Promise<RecordView> {
    return getJson(`${this.base}/records/${encodeURIComponent(id)}`);
  }

  /** PUT the annotation; 422 responses come back as a normal outcome so the
   *  caller can show the violation list. */
  async putAnnotation(
    id: string,
    cells: (number | null)[],
    cellNotes?: Record<string, string>,
  ): Promise<PutOutcome> {
    const res = await fetch(`${this.base}/records/${encodeURIComponent(id)}/annotation`, {
      method: "PUT",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ cells, cell_notes: cellNotes ?? {} }),
    });
    const body = await res.json();
    if (res.status === 200 || res.status === 422) return body as PutOutcome;
    throw new ApiError(res.status, body, (body as any)?.message);
  }

  async runCheck(id: string, kind: "insertion" | "inflection"): Promise<CheckResponse> {
    const res = await fetch(
      `${this.base}/records/${encodeURIComponent(id)}/check/${kind}`,
      { method: "POST" },
    );
    const body = await res.json();
    if (!res.ok) throw new ApiError(res.status, body, (body as any)?.message);
    return body as CheckResponse;
  }

  getAnalysis(axes?: string, heldOut?: string): Promise<AnalysisReport> {
    const params = new URLSearchParams();
    if (axes) params.set("axes", axes);
    if (heldOut) params.set("held_out", heldOut);
    const suffix = params.toString() ? `?${params}` : "";
    return getJson(`${this.base}/analysis${suffix}`);
  }
}
