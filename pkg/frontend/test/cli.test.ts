import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterEach, describe, expect, it, vi } from "vitest";

import { main } from "../src/cli.js";
import { csvText } from "./snapshot.test.js";

function quietConsole() {
  vi.spyOn(console, "log").mockImplementation(() => {});
  vi.spyOn(console, "error").mockImplementation(() => {});
}

function makeSnaps(dir: string): string[] {
  const times = [10, 20, 60, 1000];
  return times.map((t) => {
    const values = Array.from({ length: 13 }, (_, j) =>
      Array.from({ length: 13 }, (_, i) => 2.5 + 0.3 * Math.sin(i + j + t)),
    );
    const path = join(dir, `snap_u_t${t}.csv`);
    writeFileSync(path, csvText(values, t));
    return path;
  });
}

afterEach(() => {
  vi.restoreAllMocks();
});

describe("cli", () => {
  it("renders the four snapshots to the requested file", () => {
    quietConsole();
    const dir = mkdtempSync(join(tmpdir(), "cli-"));
    const out = join(dir, "figure.png");
    const code = main([...makeSnaps(dir), "--out", out, "--factor", "7"]);
    expect(code).toBe(0);
    expect(existsSync(out)).toBe(true);
    expect(readFileSync(out).subarray(1, 4).toString("latin1")).toBe("PNG");
  });

  it("requires --out", () => {
    quietConsole();
    const dir = mkdtempSync(join(tmpdir(), "cli-"));
    expect(main(makeSnaps(dir))).toBe(2);
  });

  it("requires exactly four snapshot paths", () => {
    quietConsole();
    const dir = mkdtempSync(join(tmpdir(), "cli-"));
    const code = main([...makeSnaps(dir).slice(0, 3), "--out", join(dir, "x.png")]);
    expect(code).toBe(2);
  });

  it("rejects unknown flags as usage errors", () => {
    quietConsole();
    expect(main(["--wibble"])).toBe(2);
  });

  it("returns 3 for a missing snapshot file", () => {
    quietConsole();
    const dir = mkdtempSync(join(tmpdir(), "cli-"));
    const paths = makeSnaps(dir);
    paths[1] = join(dir, "nope.csv");
    expect(main([...paths, "--out", join(dir, "x.png")])).toBe(3);
  });

  it("returns 1 for mismatched grids", () => {
    quietConsole();
    const dir = mkdtempSync(join(tmpdir(), "cli-"));
    const paths = makeSnaps(dir);
    const small = Array.from({ length: 5 }, () => Array(5).fill(2.5));
    writeFileSync(paths[3], csvText(small, 1000));
    expect(main([...paths, "--out", join(dir, "x.png")])).toBe(1);
  });

  it("prints usage on --help", () => {
    const log = vi.spyOn(console, "log").mockImplementation(() => {});
    expect(main(["--help"])).toBe(0);
    expect(log.mock.calls.map((c) => c.join(" ")).join("\n")).toContain("usage:");
  });
});
