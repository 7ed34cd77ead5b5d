import { describe, expect, it } from "vitest";

import { colormap, normalize, percentile, sharedColorScale } from "../src/colorscale.js";
import { Snapshot, parseSnapshot } from "../src/snapshot.js";
import { csvText } from "./snapshot.test.js";

function snapOf(values: number[][], t: number): Snapshot {
  return parseSnapshot(csvText(values, t));
}

function grid(vals: number[]): number[][] {
  // one 3x3 field cycling through the given values
  return Array.from({ length: 3 }, (_, j) =>
    Array.from({ length: 3 }, (_, i) => vals[(3 * j + i) % vals.length]),
  );
}

describe("percentile", () => {
  it("interpolates between closest ranks", () => {
    expect(percentile([1, 2, 3, 4, 5], 50)).toBe(3);
    expect(percentile([1, 2, 3, 4, 5], 0)).toBe(1);
    expect(percentile([1, 2, 3, 4, 5], 100)).toBe(5);
    expect(percentile([2, 1], 50)).toBe(1.5);
    expect(percentile([0, 1, 2, 3], 25)).toBe(0.75);
  });

  it("rejects bad input", () => {
    expect(() => percentile([], 50)).toThrow(/empty/);
    expect(() => percentile([1], 101)).toThrow(/\[0, 100\]/);
  });
});

describe("sharedColorScale", () => {
  it("pools only the first three snapshots", () => {
    const snaps = [grid([1, 2]), grid([2, 3]), grid([3, 4]), grid([1000, -1000])].map(
      (vals, i) => snapOf(vals, i),
    );
    const withOutlier = sharedColorScale(snaps);
    const withoutFourth = sharedColorScale(snaps.slice(0, 3).concat(snapOf(grid([2]), 9)));
    expect(withOutlier).toEqual(withoutFourth);
    expect(withOutlier.lo).toBeGreaterThanOrEqual(1);
    expect(withOutlier.hi).toBeLessThanOrEqual(4);
  });

  it("is invariant to scaling the fourth snapshot", () => {
    const base = [grid([2, 3]), grid([2.5, 3.5]), grid([2, 4]), grid([2.2, 3.1])];
    const snaps = base.map((vals, i) => snapOf(vals, i));
    const scaled = base.map((vals, i) =>
      snapOf(i === 3 ? vals.map((row) => row.map((v) => 5 * v)) : vals, i),
    );
    expect(sharedColorScale(scaled)).toEqual(sharedColorScale(snaps));
  });

  it("widens a degenerate range so constants map mid-scale", () => {
    const snaps = [grid([2.5]), grid([2.5]), grid([2.5]), grid([2.5])].map((vals, i) =>
      snapOf(vals, i),
    );
    const scale = sharedColorScale(snaps);
    expect(scale.lo).toBe(2.0);
    expect(scale.hi).toBe(3.0);
    expect(normalize(2.5, scale)).toBe(0.5);
  });

  it("clips at the requested percentiles", () => {
    // three 3x3 snapshots holding 0..26 exactly once
    const snaps = [0, 9, 18].map((base, idx) =>
      snapOf(
        Array.from({ length: 3 }, (_, j) =>
          Array.from({ length: 3 }, (_, i) => base + 3 * j + i),
        ),
        idx,
      ),
    );
    const four = snaps.concat(snaps[0]);
    const wide = sharedColorScale(four, 0, 100);
    expect(wide.lo).toBe(0);
    expect(wide.hi).toBe(26);
    // pooled positions: p/100 * 26, linearly interpolated
    const clipped = sharedColorScale(four, 1, 99);
    expect(clipped.lo).toBeCloseTo(0.26, 12);
    expect(clipped.hi).toBeCloseTo(25.74, 12);
  });
});

describe("normalize and colormap", () => {
  it("clamps outside the scale", () => {
    const scale = { lo: 0, hi: 10 };
    expect(normalize(-5, scale)).toBe(0);
    expect(normalize(15, scale)).toBe(1);
    expect(normalize(2.5, scale)).toBe(0.25);
  });

  it("hits the ramp endpoints", () => {
    expect(colormap(0)).toEqual([68, 1, 84]);
    expect(colormap(1)).toEqual([253, 231, 37]);
    expect(colormap(-1)).toEqual(colormap(0));
    expect(colormap(2)).toEqual(colormap(1));
  });
});
