import { mkdirSync, readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { beforeAll, describe, expect, it } from "vitest";

import { loadFigureSpec, renderFigure } from "../src/render.js";
import { run } from "../src/main.js";

const here = dirname(fileURLToPath(import.meta.url));
const testdata = join(here, "..", "testdata");
const outDir = join(here, "..", "out");

const FIGURES = ["fig_m2n2.json", "fig_m3n3.json", "fig_m4n4.json", "fig_m5n5.json"];

beforeAll(() => {
  mkdirSync(outDir, { recursive: true });
});

describe("figure regeneration from exported CSVs", () => {
  for (const name of FIGURES) {
    it(`renders ${name} with >= 95% of bins inside two standard errors`, () => {
      const spec = loadFigureSpec(join(testdata, name));
      const result = renderFigure(spec);
      expect(result.pooledCoverage).toBeGreaterThanOrEqual(0.95);
      const svg = readFileSync(result.outputPath, "utf8");
      // one framed panel with a curve polyline per order statistic
      expect(svg.match(/<polyline /g)?.length).toBe(spec.m);
      expect(svg.match(/<circle /g)?.length).toBe(spec.m * 100);
      expect(svg.startsWith("<svg ")).toBe(true);
    });
  }

  it("renders are byte-identical across repeated runs", () => {
    const spec = loadFigureSpec(join(testdata, "fig_m2n2.json"));
    renderFigure(spec);
    const first = readFileSync(spec.output);
    renderFigure(spec);
    const second = readFileSync(spec.output);
    expect(second.equals(first)).toBe(true);
  });

  it("the qubit-pair panels have the published shapes", () => {
    // smallest-eigenvalue density decreasing on [0, 1/2]; largest rising to
    // its mode near 1 after the breakpoint
    const spec = loadFigureSpec(join(testdata, "fig_m2n2.json"));
    const curve1 = readFileSync(spec.curves["1"]!, "utf8").trim().split("\n").slice(1);
    const first = Number(curve1[0]!.split(",")[1]);
    const last = Number(curve1[curve1.length - 1]!.split(",")[1]);
    expect(first).toBeCloseTo(6, 10);
    expect(last).toBeCloseTo(0, 10);
  });
});

describe("command line entry", () => {
  it("renders every committed figure and enforces the coverage gate", () => {
    const args = ["--min-coverage", "0.95"];
    for (const name of FIGURES) args.push(join(testdata, name));
    expect(run(args)).toBe(0);
  });

  it("fails loudly on a missing spec", () => {
    expect(() => run([join(testdata, "nope.json")])).toThrow(/missing input file/);
  });

  it("fails loudly when a referenced histogram is absent", () => {
    const spec = loadFigureSpec(join(testdata, "fig_m2n2.json"));
    spec.histograms["1"] = join(testdata, "gone.csv");
    expect(() => renderFigure(spec)).toThrow(/missing input file.*gone\.csv/);
  });
});
