import { readFileSync, writeFileSync } from "node:fs";
import { dirname, resolve } from "node:path";

import { readCurveCsv, readHistogramCsv } from "./csv.js";
import { panelCoverage } from "./coverage.js";
import { renderFigureSvg } from "./svg.js";
import type { FigureResult, FigureSpec, PanelCoverage } from "./types.js";

/** Load and validate a FigureSpec JSON; relative paths resolve against it. */
export function loadFigureSpec(path: string): FigureSpec {
  let raw: string;
  try {
    raw = readFileSync(path, "utf8");
  } catch {
    throw new Error(`missing input file: ${path}`);
  }
  let obj: unknown;
  try {
    obj = JSON.parse(raw);
  } catch {
    throw new Error(`malformed JSON in ${path}`);
  }
  const spec = obj as FigureSpec;
  const bad = (what: string): never => {
    throw new Error(`invalid figure spec ${path}: ${what}`);
  };
  if (!Number.isInteger(spec.m) || spec.m < 2) bad("m must be an integer >= 2");
  if (!Number.isInteger(spec.n) || spec.n < spec.m) bad("n must be an integer >= m");
  if (!Number.isInteger(spec.samples) || spec.samples < 1) {
    bad("samples must be a positive integer");
  }
  if (typeof spec.output !== "string" || spec.output.length === 0) {
    bad("output path required");
  }
  for (let k = 1; k <= spec.m; k++) {
    if (typeof spec.curves?.[String(k)] !== "string") bad(`curve path for k=${k} missing`);
    if (typeof spec.histograms?.[String(k)] !== "string") {
      bad(`histogram path for k=${k} missing`);
    }
  }
  const base = dirname(resolve(path));
  const rebase = (p: string) => resolve(base, p);
  return {
    m: spec.m,
    n: spec.n,
    samples: spec.samples,
    curves: Object.fromEntries(
      Object.entries(spec.curves).map(([k, p]) => [k, rebase(p)]),
    ),
    histograms: Object.fromEntries(
      Object.entries(spec.histograms).map(([k, p]) => [k, rebase(p)]),
    ),
    output: rebase(spec.output),
  };
}

/** Render one figure and report the two-standard-error coverage statistic. */
export function renderFigure(spec: FigureSpec): FigureResult {
  const panels = [];
  const coverages: PanelCoverage[] = [];
  let covered = 0;
  let total = 0;
  for (let k = 1; k <= spec.m; k++) {
    const curve = readCurveCsv(spec.curves[String(k)]!);
    const bins = readHistogramCsv(spec.histograms[String(k)]!);
    panels.push({ k, curve, bins });
    const cov = panelCoverage(curve, bins, spec.samples);
    coverages.push({ k, covered: cov.covered, totalBins: cov.totalBins });
    covered += cov.covered;
    total += cov.totalBins;
  }
  const svg = renderFigureSvg(spec.m, spec.n, panels);
  writeFileSync(spec.output, svg);
  return {
    outputPath: spec.output,
    panels: coverages,
    pooledCoverage: covered / total,
  };
}
