import { writeFileSync } from "node:fs";
import { PNG } from "pngjs";

import { ColorScale, sharedColorScale } from "./colorscale.js";
import { drawText, textWidth } from "./font.js";
import { bilinearRefine } from "./interpolate.js";
import { Range, Snapshot, readSnapshot, sameGrid, valueRange } from "./snapshot.js";
import { drawSurface } from "./surface.js";

export interface FigureSpec {
  /** Exactly four snapshot CSVs, in display order. */
  snapshotPaths: string[];
  /** Subintervals inserted per grid interval, >= 1. */
  interpolationFactor?: number;
  loPercentile?: number;
  hiPercentile?: number;
  outPath: string;
}

export interface PanelInfo {
  source: string;
  t: number;
  rawRange: Range;
  refinedRange: Range;
}

export interface Figure {
  width: number;
  height: number;
  /** RGBA pixels, row-major. */
  data: Buffer;
  scale: ColorScale;
  panels: PanelInfo[];
}

const PANEL_W = 360;
const PANEL_H = 300;
const TITLE_H = 26;
const MARGIN = 10;

/** Pixel layout of the 2x2 figure, exported so tests can cut out panels. */
export const LAYOUT = {
  panelWidth: PANEL_W,
  panelHeight: PANEL_H,
  titleHeight: TITLE_H,
  margin: MARGIN,
} as const;

const INK: [number, number, number] = [40, 40, 40];

/**
 * Compose the 2x2 panel figure in memory. Pure apart from reading the
 * four snapshot files; writing is left to writeFigure so tests can poke
 * at the pixels and ranges without touching disk.
 */
export function renderPanels(spec: FigureSpec): Figure {
  if (spec.snapshotPaths.length !== 4) {
    throw new Error(`need exactly 4 snapshots, got ${spec.snapshotPaths.length}`);
  }
  const factor = spec.interpolationFactor ?? 7;
  if (!Number.isInteger(factor) || factor < 1) {
    throw new Error(`interpolation factor must be an integer >= 1, got ${factor}`);
  }
  const snaps = spec.snapshotPaths.map((p) => readSnapshot(p));
  for (const snap of snaps.slice(1)) {
    if (!sameGrid(snaps[0], snap)) {
      throw new Error(
        `grid header mismatch: ${snap.source} (nx=${snap.nx} ny=${snap.ny} lx=${snap.lx} ly=${snap.ly}) ` +
          `vs ${snaps[0].source} (nx=${snaps[0].nx} ny=${snaps[0].ny} lx=${snaps[0].lx} ly=${snaps[0].ly})`,
      );
    }
  }
  const scale = sharedColorScale(snaps, spec.loPercentile ?? 1, spec.hiPercentile ?? 99);

  const width = 2 * PANEL_W + 3 * MARGIN;
  const height = 2 * (PANEL_H + TITLE_H) + 3 * MARGIN;
  const data = Buffer.alloc(width * height * 4, 255);

  const panels: PanelInfo[] = [];
  snaps.forEach((snap, idx) => {
    const col = idx % 2;
    const row = Math.floor(idx / 2);
    const x0 = MARGIN + col * (PANEL_W + MARGIN);
    const y0 = MARGIN + row * (PANEL_H + TITLE_H + MARGIN);

    const title = `t = ${snap.t}`;
    const tx = Math.round(x0 + (PANEL_W - textWidth(title, 2)) / 2);
    drawText(data, width, height, tx, y0 + 5, title, INK, 2);

    const refined = bilinearRefine(snap.values, factor);
    drawSurface(
      data,
      width,
      { x0, y0: y0 + TITLE_H, width: PANEL_W, height: PANEL_H },
      refined,
      scale,
    );
    panels.push({
      source: snap.source,
      t: snap.t,
      rawRange: valueRange(snap.values),
      refinedRange: valueRange(refined),
    });
  });

  return { width, height, data, scale, panels };
}

export function writeFigure(spec: FigureSpec): Figure {
  const fig = renderPanels(spec);
  const png = new PNG({ width: fig.width, height: fig.height });
  fig.data.copy(png.data);
  writeFileSync(spec.outPath, PNG.sync.write(png));
  return fig;
}

export { Snapshot, readSnapshot, sameGrid, valueRange } from "./snapshot.js";
export { bilinearRefine } from "./interpolate.js";
export { ColorScale, colormap, normalize, percentile, sharedColorScale } from "./colorscale.js";
