import type { CurvePoint, HistogramBin } from "./types.js";

/** Piecewise-linear interpolation of the sampled curve, clamped at the ends. */
export function interpolate(curve: CurvePoint[], x: number): number {
  const first = curve[0]!;
  const last = curve[curve.length - 1]!;
  if (x <= first.x) return first.p;
  if (x >= last.x) return last.p;
  let lo = 0;
  let hi = curve.length - 1;
  while (hi - lo > 1) {
    const mid = (lo + hi) >> 1;
    if (curve[mid]!.x <= x) lo = mid;
    else hi = mid;
  }
  const a = curve[lo]!;
  const b = curve[hi]!;
  return a.p + ((b.p - a.p) * (x - a.x)) / (b.x - a.x);
}

/** Average of the curve over [left, right]: trapezoidal integral of the
 *  linear interpolant, so the comparison matches what a histogram bin
 *  actually estimates (the bin-averaged density). */
export function binMean(curve: CurvePoint[], left: number, right: number): number {
  const xs = [left];
  for (const pt of curve) {
    if (pt.x > left && pt.x < right) xs.push(pt.x);
  }
  xs.push(right);
  let area = 0;
  let prevX = xs[0]!;
  let prevY = interpolate(curve, prevX);
  for (let i = 1; i < xs.length; i++) {
    const x = xs[i]!;
    const y = interpolate(curve, x);
    area += ((x - prevX) * (prevY + y)) / 2;
    prevX = x;
    prevY = y;
  }
  return area / (right - left);
}

/** Count bins whose density lies within two standard errors of the curve.
 *
 * The bin count is Poisson to good approximation, so the standard error of
 * the density estimate is sqrt(count)/(samples * width); empty bins use a
 * floor of one count so the error bar is never zero.
 */
export function panelCoverage(
  curve: CurvePoint[],
  bins: HistogramBin[],
  samples: number,
): { covered: number; totalBins: number } {
  let covered = 0;
  for (const bin of bins) {
    const width = bin.right - bin.left;
    const exact = binMean(curve, bin.left, bin.right);
    const count = bin.density * samples * width;
    const se = Math.sqrt(Math.max(count, 1)) / (samples * width);
    if (Math.abs(exact - bin.density) <= 2 * se) covered += 1;
  }
  return { covered, totalBins: bins.length };
}
