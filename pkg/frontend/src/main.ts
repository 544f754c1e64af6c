// Browser app: record list, constraint-guarded annotation grid, corpus
// evidence panel, and the rotatable cube explorer. All state lives on the
// server; the UI round-trips through the JSON API.

import { ApiClient, ApiError } from "./api.js";
import { buildCubeView, cubeVariants, projectPoint } from "./cubeViewModel.js";
import { suggestionBadges, queryRows } from "./evidenceViewModel.js";
import { byOrdinal, GROUP_ORDER } from "./guards.js";
import {
  createGrid,
  gridTotal,
  groupSums,
  toggle,
  withViolations,
  type GridState,
} from "./gridViewModel.js";
import type { Catalog, CubePoint, GroupName, RecordView } from "./types.js";

interface AppState {
  client: ApiClient;
  catalog: Catalog | null;
  corpusLoaded: boolean;
  recordIds: string[];
  selected: string | null;
  view: RecordView | null;
  grid: GridState | null;
  toast: string | null;
  evidenceHtml: string;
  heldOut: GroupName;
  angle: number;
  selectedPoint: CubePoint | null;
}

const state: AppState = {
  client: new ApiClient(localStorage.getItem("apiBase") ?? "http://127.0.0.1:8731"),
  catalog: null,
  corpusLoaded: false,
  recordIds: [],
  selected: null,
  view: null,
  grid: null,
  toast: null,
  evidenceHtml: "",
  heldOut: "replacement",
  angle: 20,
  selectedPoint: null,
};

function $(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

async function boot(): Promise<void> {
  const baseInput = $("api-base") as HTMLInputElement;
  baseInput.value = state.client.base;
  $("connect").onclick = () => {
    state.client = new ApiClient(baseInput.value);
    localStorage.setItem("apiBase", baseInput.value);
    void connect();
  };
  await connect();
}

async function connect(): Promise<void> {
  try {
    const health = await state.client.health();
    state.corpusLoaded = health.corpus_loaded;
    state.catalog = await state.client.getCatalog();
    await refreshRecords();
    await refreshCube();
    setStatus(health.corpus_loaded ? "connected" : "connected (no corpus index)");
    if (state.recordIds.length > 0) await selectRecord(state.recordIds[0]);
  } catch (err) {
    setStatus(`cannot reach the service: ${(err as Error).message}`);
  }
}

function setStatus(text: string): void {
  $("status").textContent = text;
}

async function refreshRecords(): Promise<void> {
  const summaries = await state.client.listRecords();
  state.recordIds = summaries.map((r) => r.id);
  const list = $("record-list");
  list.innerHTML = "";
  for (const summary of summaries) {
    const item = document.createElement("li");
    item.className = summary.id === state.selected ? "selected" : "";
    const score = summary.total === null ? "draft" : String(summary.total);
    item.innerHTML = `<span class="surface">${escapeHtml(summary.surface)}</span>
      <span class="score ${summary.completion}">${score}</span>`;
    item.onclick = () => void selectRecord(summary.id);
    list.appendChild(item);
  }
}

async function selectRecord(id: string): Promise<void> {
  if (!state.catalog) return;
  state.selected = id;
  state.view = await state.client.getRecord(id);
  const cells = state.view.draft ? state.view.draft.cells : state.view.record.cells;
  state.grid = createGrid(state.catalog, state.view.record.features, cells);
  if (state.view.draft) {
    state.grid = withViolations(state.grid, state.view.draft.violations);
  }
  state.toast = null;
  state.evidenceHtml = "";
  renderGrid();
  await refreshRecords();
}

function renderGrid(): void {
  const panel = $("grid");
  if (!state.catalog || !state.view || !state.grid) {
    panel.innerHTML = '<p class="muted">Select a record.</p>';
    return;
  }
  const { catalog, view, grid } = { catalog: state.catalog, view: state.view, grid: state.grid };
  const features = view.record.features;
  const sums = groupSums(catalog, grid);
  const chips = GROUP_ORDER.map(
    (g) => `<span class="chip" title="${g}">${sums[g]}</span>`,
  ).join("");

  let html = `
    <div class="record-head">
      <h2>${escapeHtml(view.record.surface)}</h2>
      <p class="muted">${escapeHtml(view.record.gloss ?? "")}</p>
      <p class="features">${escapeHtml(features.pos_pattern)} ·
        ${features.is_sentence ? "sentence" : "phrase"} ·
        ${escapeHtml(features.phrase_structure)}
        ${features.headword ? " · head: " + escapeHtml(features.headword) : ""}</p>
      <div class="totals">total <strong id="live-total">${gridTotal(grid)}</strong>
        <span class="chips">(${chips})</span></div>
    </div>`;

  if (state.toast) {
    html += `<div class="toast">${escapeHtml(state.toast)}</div>`;
  }
  if (grid.violations.length > 0) {
    const lines = grid.violations
      .map((v) => `<li>${v.rule}: ${escapeHtml(v.message)}</li>`)
      .join("");
    html += `<div class="banner error"><ul>${lines}</ul></div>`;
  }

  for (const group of GROUP_ORDER) {
    html += `<h3 class="group-head">${group}</h3><div class="cells">`;
    for (const criterion of byOrdinal(catalog).filter((c) => c.group === group)) {
      const value = grid.cells[criterion.ordinal - 1];
      const locked = grid.disabled.has(criterion.code);
      const tooltip = locked
        ? "not applicable: headless record (sentence-like or coordination)"
        : criterion.name;
      html += `
        <label class="cell ${locked ? "locked" : ""}" title="${escapeHtml(tooltip)}">
          <input type="checkbox" data-code="${criterion.code}"
            ${value === 1 ? "checked" : ""} ${locked ? "disabled" : ""}/>
          <span class="code">${criterion.code}</span>
          <span class="name">${escapeHtml(criterion.name)}</span>
        </label>`;
    }
    html += "</div>";
  }

  const checkAttrs = state.corpusLoaded
    ? ""
    : ' disabled title="no corpus index is loaded on the server (start it with --index)"';
  html += `
    <div class="actions">
      <button id="save">Save annotation</button>
      <button id="check-insertion"${checkAttrs}>Check insertions (c05)</button>
      <button id="check-inflection"${checkAttrs}>Check inflection (c06-c08)</button>
    </div>
    <div id="evidence">${state.evidenceHtml}</div>`;

  panel.innerHTML = html;

  panel.querySelectorAll<HTMLInputElement>("input[data-code]").forEach((box) => {
    box.onchange = () => {
      if (!state.catalog || !state.grid) return;
      const code = box.dataset.code!;
      state.grid = toggle(state.catalog, state.grid, code);
      state.toast = state.grid.autoCleared
        ? `${state.grid.autoCleared} cleared: mutually exclusive with ${code}`
        : null;
      renderGrid();
    };
  });
  ($("save") as HTMLButtonElement).onclick = () => void save();
  ($("check-insertion") as HTMLButtonElement).onclick = () => void runCheck("insertion");
  ($("check-inflection") as HTMLButtonElement).onclick = () => void runCheck("inflection");
}

async function save(): Promise<void> {
  if (!state.selected || !state.grid) return;
  const outcome = await state.client.putAnnotation(state.selected, state.grid.cells);
  if (outcome.ok) {
    state.toast = `saved: total ${outcome.total}`;
    state.grid = withViolations(state.grid, []);
    await refreshRecords();
    await refreshCube();
  } else {
    state.toast = null;
    state.grid = withViolations(state.grid, outcome.violations);
  }
  renderGrid();
}

async function runCheck(kind: "insertion" | "inflection"): Promise<void> {
  if (!state.selected) return;
  try {
    const response = await state.client.runCheck(state.selected, kind);
    const rows = queryRows(response.report)
      .map(
        (r) => `<tr><td class="mono">${escapeHtml(r.query)}</td>
          <td>${r.raw}</td><td>${r.effective}</td>
          <td class="muted">${r.note}</td></tr>`,
      )
      .join("");
    const badges = suggestionBadges(response.report)
      .map((b) => `<span class="badge ${b.kind}">${escapeHtml(b.label)}</span>`)
      .join(" ");
    const kwic = response.report.kwic
      .slice(0, 10)
      .map(
        (k) => `<div class="kwic"><span class="muted">${escapeHtml(k.before)}</span>
          <strong>${escapeHtml(k.match)}</strong>
          <span class="muted">${escapeHtml(k.after)}</span></div>`,
      )
      .join("");
    const realizations = response.report.realizations
      .map(([form, count]) => `<li>${escapeHtml(form)} × ${count}</li>`)
      .join("");
    state.evidenceHtml = `
      <h3>Evidence: ${kind}</h3>
      <div class="badges">${badges}</div>
      <table class="queries"><thead>
        <tr><th>query</th><th>raw</th><th>effective</th><th></th></tr>
      </thead><tbody>${rows}</tbody></table>
      ${realizations ? `<ul class="realizations">${realizations}</ul>` : ""}
      ${kwic}
      <p class="muted">Suggestions are advisory; the annotation stays manual.</p>`;
  } catch (err) {
    const message =
      err instanceof ApiError && (err.body as any)?.error === "NoCorpus"
        ? "No corpus index is loaded on the server (start it with --index)."
        : (err as Error).message;
    state.evidenceHtml = `<div class="banner">${escapeHtml(message)}</div>`;
  }
  renderGrid();
}

async function refreshCube(): Promise<void> {
  const variant = cubeVariants().find((v) => v.heldOut === state.heldOut)!;
  const axesParam = variant.axes.map((g) => g[0].toUpperCase()).join(",");
  try {
    const analysis = await state.client.getAnalysis(axesParam, state.heldOut[0].toUpperCase());
    renderCube(analysis);
  } catch (err) {
    $("cube").innerHTML = `<p class="muted">${escapeHtml((err as Error).message)}</p>`;
  }
}

function renderCube(analysis: Parameters<typeof buildCubeView>[0]): void {
  const cube = buildCubeView(analysis);
  const size = 420;
  const center = size / 2;

  const variants = cubeVariants()
    .map(
      (v) => `<option value="${v.heldOut}" ${v.heldOut === state.heldOut ? "selected" : ""}>
        axes ${v.axes.map((g) => g[0].toUpperCase()).join(",")} · color ${v.heldOut}</option>`,
    )
    .join("");

  const projected = cube.points
    .map((p) => ({ point: p, pos: projectPoint(p.key, state.angle) }))
    .sort((a, b) => a.pos.depth - b.pos.depth);

  const maxCount = Math.max(...cube.points.map((p) => p.count));
  const circles = projected
    .map(({ point, pos }) => {
      const r = 6 + 8 * (point.count / maxCount);
      const key = point.key.join(",");
      return `<circle cx="${center + pos.x - 80}" cy="${center + pos.y + 110}" r="${r}"
        fill="${point.color}" stroke="#222" stroke-width="0.6"
        data-key="${key}"><title>(${key}) ×${point.count}, mean ${point.held_out_mean}</title></circle>`;
    })
    .join("");

  const gradientStops = cube.legend.stops
    .map(
      (s, i) =>
        `<stop offset="${(i / (cube.legend.stops.length - 1)) * 100}%" stop-color="${s.color}"/>`,
    )
    .join("");

  const selected = state.selectedPoint
    ? `<div class="members">
        <h4>(${state.selectedPoint.key.join(",")}) · ${state.selectedPoint.count} record(s) ·
          mean ${state.selectedPoint.held_out_mean}</h4>
        ${state.selectedPoint.member_ids
          .map((id) => `<button class="member" data-id="${escapeHtml(id)}">${escapeHtml(id)}</button>`)
          .join(" ")}
      </div>`
    : '<p class="muted">Click a point to list its records.</p>';

  $("cube").innerHTML = `
    <div class="cube-controls">
      <select id="variant">${variants}</select>
      <label>rotate <input id="angle" type="range" min="0" max="90" value="${state.angle}"/></label>
    </div>
    <svg id="cube-svg" width="${size}" height="${size}" viewBox="0 0 ${size} ${size}">
      <defs><linearGradient id="ramp" x1="0" y1="0" x2="1" y2="0">${gradientStops}</linearGradient></defs>
      ${circles}
      <rect x="40" y="${size - 26}" width="200" height="10" fill="url(#ramp)"/>
      <text x="40" y="${size - 32}" font-size="11">0</text>
      <text x="240" y="${size - 32}" font-size="11" text-anchor="end">${cube.legend.max}</text>
      <text x="130" y="${size - 6}" font-size="11" text-anchor="middle">mean ${cube.heldOut}</text>
    </svg>
    ${selected}`;

  ($("variant") as HTMLSelectElement).onchange = (ev) => {
    state.heldOut = (ev.target as HTMLSelectElement).value as GroupName;
    state.selectedPoint = null;
    void refreshCube();
  };
  ($("angle") as HTMLInputElement).oninput = (ev) => {
    state.angle = Number((ev.target as HTMLInputElement).value);
    renderCube(analysis);
  };
  document.querySelectorAll<SVGCircleElement>("#cube-svg circle").forEach((circle) => {
    circle.onclick = () => {
      const key = circle.dataset.key!;
      state.selectedPoint = cube.points.find((p) => p.key.join(",") === key) ?? null;
      renderCube(analysis);
    };
  });
  document.querySelectorAll<HTMLButtonElement>(".member").forEach((btn) => {
    btn.onclick = () => void selectRecord(btn.dataset.id!);
  });
}

void boot();
