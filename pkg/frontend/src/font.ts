import { Rgb } from "./colorscale.js";

/**
 * Tiny 5x7 bitmap font covering exactly the characters panel titles can
 * contain: "t = " plus numbers as JavaScript prints them (digits, sign,
 * decimal point, exponent marker).
 */
const GLYPHS: Record<string, string[]> = {
  "0": [".###.", "#...#", "#..##", "#.#.#", "##..#", "#...#", ".###."],
  "1": ["..#..", ".##..", "..#..", "..#..", "..#..", "..#..", ".###."],
  "2": [".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"],
  "3": [".###.", "#...#", "....#", "..##.", "....#", "#...#", ".###."],
  "4": ["...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."],
  "5": ["#####", "#....", "####.", "....#", "....#", "#...#", ".###."],
  "6": [".###.", "#....", "####.", "#...#", "#...#", "#...#", ".###."],
  "7": ["#####", "....#", "...#.", "..#..", ".#...", ".#...", ".#..."],
  "8": [".###.", "#...#", "#...#", ".###.", "#...#", "#...#", ".###."],
  "9": [".###.", "#...#", "#...#", ".####", "....#", "....#", ".###."],
  t: [".#...", ".#...", "####.", ".#...", ".#...", ".#..#", "..##."],
  e: [".....", ".....", ".###.", "#...#", "####.", "#....", ".###."],
  "=": [".....", ".....", "#####", ".....", "#####", ".....", "....."],
  ".": [".....", ".....", ".....", ".....", ".....", ".##..", ".##.."],
  "-": [".....", ".....", ".....", "####.", ".....", ".....", "....."],
  "+": [".....", "..#..", "..#..", "#####", "..#..", "..#..", "....."],
  " ": [".....", ".....", ".....", ".....", ".....", ".....", "....."],
};

export const GLYPH_W = 5;
export const GLYPH_H = 7;

export function textWidth(text: string, scale = 1): number {
  return text.length * (GLYPH_W + 1) * scale;
}

/** Stamp text into an RGBA buffer, top-left corner at (x, y). */
export function drawText(
  data: Buffer | Uint8Array,
  imgWidth: number,
  imgHeight: number,
  x: number,
  y: number,
  text: string,
  rgb: Rgb,
  scale = 1,
): void {
  let cx = x;
  for (const ch of text) {
    const glyph = GLYPHS[ch] ?? GLYPHS[" "];
    for (let gy = 0; gy < GLYPH_H; gy++) {
      for (let gx = 0; gx < GLYPH_W; gx++) {
        if (glyph[gy][gx] !== "#") continue;
        for (let sy = 0; sy < scale; sy++) {
          for (let sx = 0; sx < scale; sx++) {
            const px = cx + gx * scale + sx;
            const py = y + gy * scale + sy;
            if (px < 0 || py < 0 || px >= imgWidth || py >= imgHeight) continue;
            const off = (py * imgWidth + px) * 4;
            data[off] = rgb[0];
            data[off + 1] = rgb[1];
            data[off + 2] = rgb[2];
            data[off + 3] = 255;
          }
        }
      }
    }
    cx += (GLYPH_W + 1) * scale;
  }
}
