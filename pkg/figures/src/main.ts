import { argv, exit, stderr, stdout } from "node:process";

import { loadFigureSpec, renderFigure } from "./render.js";

function usage(): never {
  stderr.write(
    "usage: node dist/main.js [--min-coverage FRACTION] <figurespec.json> [...]\n",
  );
  exit(2);
}

export function run(args: string[]): number {
  let minCoverage: number | null = null;
  const specs: string[] = [];
  for (let i = 0; i < args.length; i++) {
    const arg = args[i]!;
    if (arg === "--min-coverage") {
      const value = Number(args[++i]);
      if (Number.isNaN(value)) usage();
      minCoverage = value;
    } else {
      specs.push(arg);
    }
  }
  if (specs.length === 0) usage();
  let failed = false;
  for (const path of specs) {
    const result = renderFigure(loadFigureSpec(path));
    const perPanel = result.panels
      .map((p) => `k${p.k}=${p.covered}/${p.totalBins}`)
      .join(" ");
    stdout.write(
      `${result.outputPath}: coverage ${(result.pooledCoverage * 100).toFixed(1)}% ` +
        `within 2 SE (${perPanel})\n`,
    );
    if (minCoverage !== null && result.pooledCoverage < minCoverage) {
      stderr.write(`coverage below ${minCoverage} for ${path}\n`);
      failed = true;
    }
  }
  return failed ? 1 : 0;
}

const isMain = import.meta.url === `file://${argv[1]}`;
if (isMain) {
  try {
    exit(run(argv.slice(2)));
  } catch (err) {
    stderr.write(`error: ${err instanceof Error ? err.message : String(err)}\n`);
    exit(1);
  }
}
