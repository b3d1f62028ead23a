/** Input description for one figure: a row of panels, one per order statistic. */
export interface FigureSpec {
  /** Smaller subsystem dimension; the figure has m panels. */
  m: number;
  /** Larger subsystem dimension (display only). */
  n: number;
  /** Monte Carlo sample count behind the histograms (sets the error bars). */
  samples: number;
  /** Curve CSV path per order statistic, keyed "1".."m". */
  curves: Record<string, string>;
  /** Histogram CSV path per order statistic, keyed "1".."m". */
  histograms: Record<string, string>;
  /** Output image path (SVG). */
  output: string;
}

export interface CurvePoint {
  x: number;
  p: number;
}

export interface HistogramBin {
  left: number;
  right: number;
  density: number;
}

export interface PanelCoverage {
  k: number;
  covered: number;
  totalBins: number;
}

export interface FigureResult {
  outputPath: string;
  panels: PanelCoverage[];
  /** Fraction of bins, pooled over all panels, where the exact curve lies
   *  within two standard errors of the histogram density. */
  pooledCoverage: number;
}
