// Cube explorer state. The view renders exactly the point list the service
// aggregated; no client-side re-aggregation happens here.

import type { AnalysisReport, CubePoint, GroupName } from "./types.js";

export interface RenderedPoint extends CubePoint {
  color: string;
}

export interface CubeView {
  axes: GroupName[];
  heldOut: GroupName;
  heldOutMax: number;
  points: RenderedPoint[];
  legend: { min: number; max: number; stops: { value: number; color: string }[] };
}

/** Two-color ramp from cold (low mean) to warm (high mean). */
export function rampColor(scalar: number): string {
  const t = Math.min(1, Math.max(0, scalar));
  const from = { r: 43, g: 78, b: 138 };
  const to = { r: 244, g: 200, b: 66 };
  const r = Math.round(from.r + (to.r - from.r) * t);
  const g = Math.round(from.g + (to.g - from.g) * t);
  const b = Math.round(from.b + (to.b - from.b) * t);
  return `rgb(${r},${g},${b})`;
}

export function buildCubeView(analysis: AnalysisReport): CubeView {
  const cube = analysis.cube;
  const points = cube.points.map((p) => ({ ...p, color: rampColor(p.color_scalar) }));
  const stops = [0, 0.25, 0.5, 0.75, 1].map((t) => ({
    value: t * cube.held_out_max,
    color: rampColor(t),
  }));
  return {
    axes: cube.axes,
    heldOut: cube.held_out,
    heldOutMax: cube.held_out_max,
    points,
    legend: { min: 0, max: cube.held_out_max, stops },
  };
}

/** Oblique projection of an integer axis triple onto screen coordinates,
 *  rotatable around the vertical axis. */
export function projectPoint(
  key: [number, number, number],
  angleDeg: number,
  scale = 40,
): { x: number; y: number; depth: number } {
  const [a, b, c] = key;
  const angle = (angleDeg * Math.PI) / 180;
  const x1 = a * Math.cos(angle) - b * Math.sin(angle);
  const z1 = a * Math.sin(angle) + b * Math.cos(angle);
  return {
    x: x1 * scale,
    y: -c * scale + z1 * scale * 0.35,
    depth: z1,
  };
}

/** The four cube variants: hold one group out, keep the others as axes in
 *  canonical order. */
export function cubeVariants(): { axes: GroupName[]; heldOut: GroupName }[] {
  const all: GroupName[] = ["lexical", "grammatical", "obsolescence", "replacement"];
  return all.map((heldOut) => ({
    axes: all.filter((g) => g !== heldOut),
    heldOut,
  }));
}
