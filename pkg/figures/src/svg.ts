import type { CurvePoint, HistogramBin } from "./types.js";

/** Fixed layout and style; renders carry no timestamps or random state, so
 *  identical inputs produce byte-identical images. */
const PANEL_WIDTH = 340;
const PANEL_HEIGHT = 280;
const MARGIN = { left: 54, right: 14, top: 34, bottom: 42 };
const CURVE_COLOR = "#1f5fa6";
const DOT_COLOR = "#d2691e";
const AXIS_COLOR = "#222222";
const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

function fmt(value: number): string {
  // fixed 2-decimal tick labels are unambiguous on [0, 1] supports
  return value.toFixed(2);
}

function coord(value: number): string {
  return value.toFixed(2);
}

interface PanelData {
  k: number;
  curve: CurvePoint[];
  bins: HistogramBin[];
}

function renderPanel(panel: PanelData, offsetX: number): string {
  const { curve, bins } = panel;
  const xMin = Math.min(curve[0]!.x, bins[0]!.left);
  const xMax = Math.max(curve[curve.length - 1]!.x, bins[bins.length - 1]!.right);
  let yMax = 0;
  for (const pt of curve) yMax = Math.max(yMax, pt.p);
  for (const bin of bins) yMax = Math.max(yMax, bin.density);
  yMax *= 1.06;

  const plotW = PANEL_WIDTH - MARGIN.left - MARGIN.right;
  const plotH = PANEL_HEIGHT - MARGIN.top - MARGIN.bottom;
  const sx = (x: number) => offsetX + MARGIN.left + ((x - xMin) / (xMax - xMin)) * plotW;
  const sy = (y: number) => MARGIN.top + plotH - (y / yMax) * plotH;

  const parts: string[] = [];
  const axisBottom = MARGIN.top + plotH;

  // frame
  parts.push(
    `<rect x="${coord(offsetX + MARGIN.left)}" y="${MARGIN.top}" ` +
      `width="${plotW}" height="${plotH}" fill="none" stroke="${AXIS_COLOR}" stroke-width="1"/>`,
  );

  // ticks and labels
  const ticks = 4;
  for (let i = 0; i <= ticks; i++) {
    const x = xMin + ((xMax - xMin) * i) / ticks;
    const px = sx(x);
    parts.push(
      `<line x1="${coord(px)}" y1="${axisBottom}" x2="${coord(px)}" y2="${axisBottom + 5}" ` +
        `stroke="${AXIS_COLOR}" stroke-width="1"/>`,
      `<text x="${coord(px)}" y="${axisBottom + 18}" ${FONT} font-size="11" ` +
        `text-anchor="middle">${fmt(x)}</text>`,
    );
    const y = (yMax * i) / ticks;
    const py = sy(y);
    parts.push(
      `<line x1="${coord(offsetX + MARGIN.left - 5)}" y1="${coord(py)}" ` +
        `x2="${coord(offsetX + MARGIN.left)}" y2="${coord(py)}" ` +
        `stroke="${AXIS_COLOR}" stroke-width="1"/>`,
      `<text x="${coord(offsetX + MARGIN.left - 8)}" y="${coord(py + 4)}" ${FONT} ` +
        `font-size="11" text-anchor="end">${fmt(y)}</text>`,
    );
  }

  // exact density as a solid curve
  const pathPoints = curve
    .map((pt) => `${coord(sx(pt.x))},${coord(sy(pt.p))}`)
    .join(" ");
  parts.push(
    `<polyline points="${pathPoints}" fill="none" stroke="${CURVE_COLOR}" stroke-width="1.8"/>`,
  );

  // histogram as dots at bin centers
  for (const bin of bins) {
    const cx = sx((bin.left + bin.right) / 2);
    const cy = sy(bin.density);
    parts.push(
      `<circle cx="${coord(cx)}" cy="${coord(cy)}" r="2.4" fill="${DOT_COLOR}"/>`,
    );
  }

  // panel caption
  parts.push(
    `<text x="${coord(offsetX + MARGIN.left + plotW / 2)}" y="${MARGIN.top - 10}" ${FONT} ` +
      `font-size="13" text-anchor="middle">k = ${panel.k}</text>`,
    `<text x="${coord(offsetX + MARGIN.left + plotW / 2)}" y="${axisBottom + 34}" ${FONT} ` +
      `font-size="12" text-anchor="middle">x</text>`,
  );
  return parts.join("\n");
}

/** One figure: a horizontal row of panels, one per order statistic. */
export function renderFigureSvg(
  m: number,
  n: number,
  panels: PanelData[],
): string {
  const width = PANEL_WIDTH * panels.length;
  const height = PANEL_HEIGHT;
  const body = panels
    .map((panel, i) => renderPanel(panel, i * PANEL_WIDTH))
    .join("\n");
  const title =
    `<text x="${coord(width / 2)}" y="16" ${FONT} font-size="14" text-anchor="middle">` +
    `Ordered-eigenvalue densities, m = ${m}, n = ${n}</text>`;
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}">\n` +
    `<rect width="${width}" height="${height}" fill="white"/>\n` +
    `${title}\n${body}\n</svg>\n`
  );
}
