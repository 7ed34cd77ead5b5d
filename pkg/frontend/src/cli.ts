#!/usr/bin/env node
import { parseArgs } from "node:util";

import { writeFigure } from "./render.js";

const USAGE = `usage: chemo-figures [options] <snap1.csv> <snap2.csv> <snap3.csv> <snap4.csv>

Render a 2x2 panel figure of axonometric surfaces from four snapshot
CSVs that share one grid header. Color limits come from the 1st and
99th percentiles of the first three snapshots.

options:
  -o, --out <path>     output PNG path (required)
  -f, --factor <int>   bilinear refinement factor, default 7
      --lo <pct>       lower color percentile, default 1
      --hi <pct>       upper color percentile, default 99
  -h, --help           show this message`;

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      allowPositionals: true,
      options: {
        out: { type: "string", short: "o" },
        factor: { type: "string", short: "f", default: "7" },
        lo: { type: "string", default: "1" },
        hi: { type: "string", default: "99" },
        help: { type: "boolean", short: "h", default: false },
      },
    });
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    console.error(USAGE);
    return 2;
  }
  if (parsed.values.help) {
    console.log(USAGE);
    return 0;
  }
  if (!parsed.values.out) {
    console.error("error: --out is required");
    console.error(USAGE);
    return 2;
  }
  if (parsed.positionals.length !== 4) {
    console.error(`error: expected 4 snapshot paths, got ${parsed.positionals.length}`);
    console.error(USAGE);
    return 2;
  }
  const factor = Number(parsed.values.factor);
  const lo = Number(parsed.values.lo);
  const hi = Number(parsed.values.hi);
  if (!isFinite(factor) || !isFinite(lo) || !isFinite(hi)) {
    console.error("error: --factor, --lo and --hi must be numbers");
    return 2;
  }

  try {
    const fig = writeFigure({
      snapshotPaths: parsed.positionals,
      interpolationFactor: factor,
      loPercentile: lo,
      hiPercentile: hi,
      outPath: parsed.values.out,
    });
    const times = fig.panels.map((p) => p.t).join(", ");
    console.log(
      `wrote ${parsed.values.out} (${fig.width}x${fig.height}, t = ${times}, ` +
        `color [${fig.scale.lo.toPrecision(6)}, ${fig.scale.hi.toPrecision(6)}])`,
    );
    return 0;
  } catch (err) {
    const e = err as NodeJS.ErrnoException;
    console.error(`error: ${e.message}`);
    return e.code === "ENOENT" ? 3 : 1;
  }
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("cli.js") || entry.endsWith("chemo-figures")) {
  process.exit(main(process.argv.slice(2)));
}
