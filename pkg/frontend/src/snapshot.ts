import { readFileSync } from "node:fs";

/** One persisted field: a header line plus ny rows of nx values. */
export interface Snapshot {
  nx: number;
  ny: number;
  lx: number;
  ly: number;
  t: number;
  /** Row-major node values, values[j][i] at (x_i, y_j). */
  values: number[][];
  /** Where the data came from, used in error messages. */
  source: string;
}

const HEADER = /^# nx=(\d+) ny=(\d+) lx=(\S+) ly=(\S+) t=(\S+)$/;

export function parseSnapshot(text: string, source = "snapshot"): Snapshot {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new Error(`${source}: empty file`);
  }
  const m = HEADER.exec(lines[0]);
  if (!m) {
    throw new Error(`${source}: bad header line ${JSON.stringify(lines[0])}`);
  }
  const nx = Number(m[1]);
  const ny = Number(m[2]);
  const lx = Number(m[3]);
  const ly = Number(m[4]);
  const t = Number(m[5]);
  if (nx < 2 || ny < 2 || !isFinite(lx) || !isFinite(ly) || !isFinite(t)) {
    throw new Error(`${source}: nonsense header values nx=${nx} ny=${ny} lx=${m[3]} ly=${m[4]} t=${m[5]}`);
  }
  const rows = lines.slice(1);
  if (rows.length !== ny) {
    throw new Error(`${source}: expected ${ny} data rows, found ${rows.length}`);
  }
  const values: number[][] = [];
  for (let j = 0; j < ny; j++) {
    const cells = rows[j].split(",");
    if (cells.length !== nx) {
      throw new Error(`${source}: row ${j} has ${cells.length} values, expected ${nx}`);
    }
    const row: number[] = new Array(nx);
    for (let i = 0; i < nx; i++) {
      const v = Number(cells[i]);
      if (!isFinite(v)) {
        throw new Error(`${source}: non-finite value ${JSON.stringify(cells[i])} at row ${j}, column ${i}`);
      }
      row[i] = v;
    }
    values.push(row);
  }
  return { nx, ny, lx, ly, t, values, source };
}

export function readSnapshot(path: string): Snapshot {
  return parseSnapshot(readFileSync(path, "utf8"), path);
}

/** True when two snapshots live on the same grid (time may differ). */
export function sameGrid(a: Snapshot, b: Snapshot): boolean {
  return a.nx === b.nx && a.ny === b.ny && a.lx === b.lx && a.ly === b.ly;
}

export interface Range {
  min: number;
  max: number;
}

export function valueRange(values: number[][]): Range {
  let min = Infinity;
  let max = -Infinity;
  for (const row of values) {
    for (const v of row) {
      if (v < min) min = v;
      if (v > max) max = v;
    }
  }
  return { min, max };
}
