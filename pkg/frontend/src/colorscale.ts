import { Snapshot } from "./snapshot.js";

export interface ColorScale {
  lo: number;
  hi: number;
}

export type Rgb = [number, number, number];

/**
 * Percentile with linear interpolation between closest ranks, so
 * percentile(xs, 50) of two values is their midpoint.
 */
export function percentile(values: number[], p: number): number {
  if (values.length === 0) {
    throw new Error("percentile of an empty list");
  }
  if (p < 0 || p > 100) {
    throw new Error(`percentile must be in [0, 100], got ${p}`);
  }
  const sorted = values.slice().sort((a, b) => a - b);
  const pos = (p / 100) * (sorted.length - 1);
  const k = Math.floor(pos);
  const frac = pos - k;
  if (k + 1 >= sorted.length) {
    return sorted[sorted.length - 1];
  }
  return sorted[k] + (sorted[k + 1] - sorted[k]) * frac;
}

/**
 * Global color limits from the FIRST THREE snapshots only. The last
 * panel usually sits at the flat steady state; letting it vote would
 * collapse the scale and hide the early-time structure.
 */
export function sharedColorScale(
  snapshots: Snapshot[],
  loPct = 1,
  hiPct = 99,
): ColorScale {
  if (snapshots.length < 3) {
    throw new Error(`need at least 3 snapshots for the color scale, got ${snapshots.length}`);
  }
  const pool: number[] = [];
  for (const snap of snapshots.slice(0, 3)) {
    for (const row of snap.values) {
      pool.push(...row);
    }
  }
  let lo = percentile(pool, loPct);
  let hi = percentile(pool, hiPct);
  if (lo === hi) {
    // constant data: widen so everything maps to the middle of the map
    lo -= 0.5;
    hi += 0.5;
  }
  return { lo, hi };
}

export function normalize(value: number, scale: ColorScale): number {
  const s = (value - scale.lo) / (scale.hi - scale.lo);
  return s < 0 ? 0 : s > 1 ? 1 : s;
}

// Nine-anchor viridis ramp, linearly interpolated.
const ANCHORS: Rgb[] = [
  [68, 1, 84],
  [71, 44, 122],
  [59, 81, 139],
  [44, 113, 142],
  [33, 144, 141],
  [39, 173, 129],
  [92, 200, 99],
  [170, 220, 50],
  [253, 231, 37],
];

export function colormap(s: number): Rgb {
  const x = s < 0 ? 0 : s > 1 ? 1 : s;
  const pos = x * (ANCHORS.length - 1);
  const k = Math.min(Math.floor(pos), ANCHORS.length - 2);
  const f = pos - k;
  const a = ANCHORS[k];
  const b = ANCHORS[k + 1];
  return [
    Math.round(a[0] + (b[0] - a[0]) * f),
    Math.round(a[1] + (b[1] - a[1]) * f),
    Math.round(a[2] + (b[2] - a[2]) * f),
  ];
}
