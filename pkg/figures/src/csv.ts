import { readFileSync } from "node:fs";

import type { CurvePoint, HistogramBin } from "./types.js";

/** Read a small CSV file into trimmed rows; no quoting is used by the exporters. */
function readRows(path: string): string[][] {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch {
    throw new Error(`missing input file: ${path}`);
  }
  return text
    .split(/\r?\n/)
    .filter((line) => line.length > 0)
    .map((line) => line.split(","));
}

function asNumber(raw: string | undefined, path: string, what: string): number {
  const value = Number(raw);
  if (raw === undefined || raw === "" || Number.isNaN(value)) {
    throw new Error(`malformed ${what} in ${path}: ${String(raw)}`);
  }
  return value;
}

/** Parse an exact-curve export: header "x,p", one sample per row, ascending x. */
export function readCurveCsv(path: string): CurvePoint[] {
  const rows = readRows(path);
  const header = rows[0];
  if (!header || header[0] !== "x" || header[1] !== "p") {
    throw new Error(`malformed curve header in ${path}`);
  }
  const points = rows.slice(1).map((row) => ({
    x: asNumber(row[0], path, "curve x"),
    p: asNumber(row[1], path, "curve value"),
  }));
  if (points.length < 2) {
    throw new Error(`curve file has too few samples: ${path}`);
  }
  for (let i = 1; i < points.length; i++) {
    if (points[i]!.x <= points[i - 1]!.x) {
      throw new Error(`curve x values not increasing in ${path}`);
    }
  }
  return points;
}

/** Parse a histogram export: header "k,bin_left,bin_right,density". */
export function readHistogramCsv(path: string): HistogramBin[] {
  const rows = readRows(path);
  const header = rows[0];
  const expected = ["k", "bin_left", "bin_right", "density"];
  if (!header || expected.some((name, i) => header[i] !== name)) {
    throw new Error(`malformed histogram header in ${path}`);
  }
  const bins = rows.slice(1).map((row) => ({
    left: asNumber(row[1], path, "bin edge"),
    right: asNumber(row[2], path, "bin edge"),
    density: asNumber(row[3], path, "bin density"),
  }));
  if (bins.length === 0) {
    throw new Error(`histogram file is empty: ${path}`);
  }
  for (const bin of bins) {
    if (!(bin.right > bin.left) || bin.density < 0) {
      throw new Error(`malformed bin in ${path}`);
    }
  }
  return bins;
}
