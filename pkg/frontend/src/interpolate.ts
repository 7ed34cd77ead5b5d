/**
 * Bilinear grid refinement.
 *
 * A factor f inserts f subintervals per original interval, so an n-node
 * axis becomes (n - 1) * f + 1 nodes and the original nodes are kept
 * exactly. Interpolated values are clamped to the corner range of their
 * cell, which makes "refined range inside raw range" hold even when the
 * weighted sum rounds a hair past a corner value.
 */
export function bilinearRefine(values: number[][], factor: number): number[][] {
  if (!Number.isInteger(factor) || factor < 1) {
    throw new Error(`interpolation factor must be an integer >= 1, got ${factor}`);
  }
  const ny = values.length;
  const nx = values[0].length;
  if (factor === 1) {
    return values.map((row) => row.slice());
  }
  const outNy = (ny - 1) * factor + 1;
  const outNx = (nx - 1) * factor + 1;
  const out: number[][] = [];
  for (let J = 0; J < outNy; J++) {
    const sy = J / factor;
    const j = Math.min(Math.floor(sy), ny - 2);
    const fy = sy - j;
    const row: number[] = new Array(outNx);
    for (let I = 0; I < outNx; I++) {
      const sx = I / factor;
      const i = Math.min(Math.floor(sx), nx - 2);
      const fx = sx - i;
      const v00 = values[j][i];
      const v01 = values[j][i + 1];
      const v10 = values[j + 1][i];
      const v11 = values[j + 1][i + 1];
      const top = v00 + (v01 - v00) * fx;
      const bot = v10 + (v11 - v10) * fx;
      const v = top + (bot - top) * fy;
      const lo = Math.min(v00, v01, v10, v11);
      const hi = Math.max(v00, v01, v10, v11);
      row[I] = v < lo ? lo : v > hi ? hi : v;
    }
    out.push(row);
  }
  return out;
}
