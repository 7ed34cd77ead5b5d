import { ColorScale, Rgb, colormap, normalize } from "./colorscale.js";

export interface Rect {
  x0: number;
  y0: number;
  width: number;
  height: number;
}

interface Pt {
  x: number;
  y: number;
}

const COS30 = Math.cos(Math.PI / 6);
const SIN30 = 0.5;
/** Vertical lift of a full-scale value, in grid-diagonal units. */
const HEIGHT_LIFT = 0.55;
/** Light direction for the face shading, pointing toward the viewer. */
const LIGHT = normalizeVec([-0.4, 0.55, 0.78]);

function normalizeVec(v: [number, number, number]): [number, number, number] {
  const n = Math.hypot(v[0], v[1], v[2]);
  return [v[0] / n, v[1] / n, v[2] / n];
}

/**
 * Fill one triangle into an RGBA buffer, clipped to the given rect.
 * Plain edge-function rasterization, pixel centers at half offsets.
 */
function fillTriangle(
  data: Buffer | Uint8Array,
  imgWidth: number,
  clip: Rect,
  p0: Pt,
  p1: Pt,
  p2: Pt,
  rgb: Rgb,
): void {
  const minX = Math.max(clip.x0, Math.floor(Math.min(p0.x, p1.x, p2.x)));
  const maxX = Math.min(clip.x0 + clip.width - 1, Math.ceil(Math.max(p0.x, p1.x, p2.x)));
  const minY = Math.max(clip.y0, Math.floor(Math.min(p0.y, p1.y, p2.y)));
  const maxY = Math.min(clip.y0 + clip.height - 1, Math.ceil(Math.max(p0.y, p1.y, p2.y)));
  const area = (p1.x - p0.x) * (p2.y - p0.y) - (p1.y - p0.y) * (p2.x - p0.x);
  if (area === 0) return;
  for (let py = minY; py <= maxY; py++) {
    const cy = py + 0.5;
    for (let px = minX; px <= maxX; px++) {
      const cx = px + 0.5;
      const w0 = (p1.x - p0.x) * (cy - p0.y) - (p1.y - p0.y) * (cx - p0.x);
      const w1 = (p2.x - p1.x) * (cy - p1.y) - (p2.y - p1.y) * (cx - p1.x);
      const w2 = (p0.x - p2.x) * (cy - p2.y) - (p0.y - p2.y) * (cx - p2.x);
      const inside =
        area > 0 ? w0 >= 0 && w1 >= 0 && w2 >= 0 : w0 <= 0 && w1 <= 0 && w2 <= 0;
      if (!inside) continue;
      const off = (py * imgWidth + px) * 4;
      data[off] = rgb[0];
      data[off + 1] = rgb[1];
      data[off + 2] = rgb[2];
      data[off + 3] = 255;
    }
  }
}

/**
 * Draw one field as an axonometric surface into the rect. Cells are
 * painted back to front (increasing i + j), each as two triangles
 * colored by the cell mean through the shared scale and dimmed by a
 * Lambert factor from the cell slope.
 */
export function drawSurface(
  data: Buffer | Uint8Array,
  imgWidth: number,
  rect: Rect,
  values: number[][],
  scale: ColorScale,
): void {
  const ny = values.length;
  const nx = values[0].length;

  // screen-space extents of the projected unit square with lift
  const spanX = 2 * COS30;
  const spanY = 2 * SIN30 + HEIGHT_LIFT;
  const pad = 6;
  const sFit = Math.min((rect.width - 2 * pad) / spanX, (rect.height - 2 * pad) / spanY);
  const cx = rect.x0 + rect.width / 2;
  const yTop = rect.y0 + pad + HEIGHT_LIFT * sFit;

  const project = (u: number, v: number, h: number): Pt => ({
    x: cx + (u - v) * COS30 * sFit,
    y: yTop + (u + v) * SIN30 * sFit - h * HEIGHT_LIFT * sFit,
  });

  const heights: number[][] = values.map((row) => row.map((v) => normalize(v, scale)));

  for (let d = 0; d <= nx + ny - 4; d++) {
    for (let j = 0; j < ny - 1; j++) {
      const i = d - j;
      if (i < 0 || i >= nx - 1) continue;
      const u0 = i / (nx - 1);
      const u1 = (i + 1) / (nx - 1);
      const v0 = j / (ny - 1);
      const v1 = (j + 1) / (ny - 1);
      const h00 = heights[j][i];
      const h01 = heights[j][i + 1];
      const h10 = heights[j + 1][i];
      const h11 = heights[j + 1][i + 1];

      const mean = (values[j][i] + values[j][i + 1] + values[j + 1][i] + values[j + 1][i + 1]) / 4;
      const base = colormap(normalize(mean, scale));

      // cell-average slope in lifted-height units per cell step
      const du = (h01 - h00 + h11 - h10) / 2;
      const dv = (h10 - h00 + h11 - h01) / 2;
      const step = 1 / Math.max(nx - 1, ny - 1);
      const n = normalizeVec([-du * HEIGHT_LIFT, -dv * HEIGHT_LIFT, step]);
      const lambert = Math.max(0, n[0] * LIGHT[0] + n[1] * LIGHT[1] + n[2] * LIGHT[2]);
      const bright = 0.6 + 0.4 * lambert;
      const rgb: Rgb = [
        Math.round(base[0] * bright),
        Math.round(base[1] * bright),
        Math.round(base[2] * bright),
      ];

      const p00 = project(u0, v0, h00);
      const p01 = project(u1, v0, h01);
      const p10 = project(u0, v1, h10);
      const p11 = project(u1, v1, h11);
      fillTriangle(data, imgWidth, rect, p00, p01, p11, rgb);
      fillTriangle(data, imgWidth, rect, p00, p11, p10, rgb);
    }
  }
}
