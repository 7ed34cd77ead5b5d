import { describe, expect, it } from "vitest";

import { parseSnapshot, sameGrid, valueRange } from "../src/snapshot.js";

const TWO_PI = 2 * Math.PI;

export function csvText(values: number[][], t: number, lx = TWO_PI, ly = TWO_PI): string {
  const ny = values.length;
  const nx = values[0].length;
  const header = `# nx=${nx} ny=${ny} lx=${lx} ly=${ly} t=${t}`;
  const rows = values.map((row) => row.join(","));
  return [header, ...rows].join("\n") + "\n";
}

function grid3(fill: number): number[][] {
  return [
    [fill, fill, fill],
    [fill, fill, fill],
    [fill, fill, fill],
  ];
}

describe("parseSnapshot", () => {
  it("round-trips a small field", () => {
    const values = [
      [1.5, 2.25, 3.0],
      [4.0, 5.5, 6.125],
    ];
    const snap = parseSnapshot(csvText(values, 10));
    expect(snap.nx).toBe(3);
    expect(snap.ny).toBe(2);
    expect(snap.t).toBe(10);
    expect(snap.lx).toBeCloseTo(TWO_PI, 12);
    expect(snap.values).toEqual(values);
  });

  it("keeps 17-digit values exactly", () => {
    const v = 2.9793502555432461e-13;
    const snap = parseSnapshot(csvText(grid3(v), 1000));
    expect(snap.values[1][1]).toBe(v);
  });

  it("rejects a missing or malformed header", () => {
    expect(() => parseSnapshot("1,2\n3,4\n")).toThrow(/bad header/);
    expect(() => parseSnapshot("# nx=3 ny=3\n")).toThrow(/bad header/);
    expect(() => parseSnapshot("")).toThrow(/empty/);
  });

  it("rejects wrong row and column counts", () => {
    const text = csvText(grid3(1), 0);
    const shortRows = text.split("\n").slice(0, 3).join("\n") + "\n";
    expect(() => parseSnapshot(shortRows)).toThrow(/expected 3 data rows, found 2/);
    expect(() => parseSnapshot(text.replace("1,1,1", "1,1"))).toThrow(/has 2 values/);
  });

  it("rejects non-finite entries", () => {
    expect(() => parseSnapshot(csvText(grid3(1), 0).replace("1,1,1", "1,nan,1"))).toThrow(
      /non-finite/,
    );
  });
});

describe("sameGrid", () => {
  it("compares the four grid header fields, not the time", () => {
    const a = parseSnapshot(csvText(grid3(1), 10));
    const b = parseSnapshot(csvText(grid3(2), 60));
    const c = parseSnapshot(csvText(grid3(1), 10, 6.0));
    expect(sameGrid(a, b)).toBe(true);
    expect(sameGrid(a, c)).toBe(false);
  });
});

describe("valueRange", () => {
  it("finds min and max", () => {
    expect(valueRange([[3, -1], [2, 7]])).toEqual({ min: -1, max: 7 });
  });
});
