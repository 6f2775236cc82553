/**
 * Series extraction and SVG assembly.
 *
 * Pixel geometry uses parsed floats, but every plotted value travels as
 * the raw CSV string and is embedded verbatim in the SVG (data-x /
 * data-values attributes), so a figure can always be audited against
 * its CSV byte for byte.
 */

import { Table, rowReader, columnIndex, SchemaError } from "./csv.js";
import {
  FigureSpec,
  PALETTE,
  SeriesSpec,
  dashPattern,
  seriesLabel,
  xColumn,
  yColumn,
} from "./spec.js";

export interface SeriesData {
  spec: SeriesSpec;
  label: string;
  color: string;
  dash?: string;
  /** raw CSV strings, in ascending numeric x order */
  xs: string[];
  ys: string[];
}

export interface Chart {
  spec: FigureSpec;
  series: SeriesData[];
  xTicks: number[];
  yTicks: number[];
  xRange: [number, number];
  yRange: [number, number];
}

const WIDTH = 960;
const HEIGHT = 600;
const MARGIN = { left: 78, right: 250, top: 46, bottom: 64 };

export const PLOT = {
  width: WIDTH,
  height: HEIGHT,
  x0: MARGIN.left,
  y0: MARGIN.top,
  x1: WIDTH - MARGIN.right,
  y1: HEIGHT - MARGIN.bottom,
};

function matches(spec: FigureSpec, s: SeriesSpec, get: (name: string) => string): boolean {
  if (spec.family === "ties") {
    if (get("rule") !== s.ruleA) return false;
  } else {
    if (get("rule_a") !== s.ruleA || get("rule_b") !== (s.ruleB ?? "")) return false;
  }
  if (s.param !== undefined && get("param") !== s.param) return false;
  return true;
}

export function extractSeries(spec: FigureSpec, table: Table): SeriesData[] {
  const xcol = xColumn(spec);
  const ycol = yColumn(spec);
  // fail fast, naming the first missing column
  columnIndex(table, xcol);
  columnIndex(table, ycol);
  columnIndex(table, spec.family === "ties" ? "rule" : "rule_a");
  const reader = rowReader(table);
  const out: SeriesData[] = [];
  spec.series.forEach((s, i) => {
    const points: Array<{ x: string; y: string }> = [];
    for (const raw of table.rows) {
      const row = reader(raw);
      if (matches(spec, s, (name) => row.get(name))) {
        points.push({ x: row.get(xcol), y: row.get(ycol) });
      }
    }
    if (points.length === 0) {
      throw new Error(`series ${seriesLabel(s)} selects no rows`);
    }
    const distinct = new Set(points.map((p) => p.x));
    if (distinct.size !== points.length) {
      throw new Error(
        `series ${seriesLabel(s)} has duplicate x values; add a "param" filter`
      );
    }
    points.sort((a, b) => parseFloat(a.x) - parseFloat(b.x));
    out.push({
      spec: s,
      label: seriesLabel(s),
      color: PALETTE[i % PALETTE.length],
      dash: dashPattern(s),
      xs: points.map((p) => p.x),
      ys: points.map((p) => p.y),
    });
  });
  return out;
}

function niceTicks(lo: number, hi: number, count = 5): number[] {
  if (hi === lo) {
    hi = lo + 1;
  }
  const span = hi - lo;
  const step0 = Math.pow(10, Math.floor(Math.log10(span / count)));
  let step = step0;
  for (const mult of [1, 2, 5, 10]) {
    step = step0 * mult;
    if (span / step <= count) break;
  }
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= hi + 1e-12; t += step) {
    ticks.push(Math.abs(t) < 1e-12 ? 0 : t);
  }
  return ticks;
}

export function buildChart(spec: FigureSpec, table: Table): Chart {
  const series = extractSeries(spec, table);
  const xsAll = series.flatMap((s) => s.xs.map(parseFloat));
  const ysAll = series.flatMap((s) => s.ys.map(parseFloat));
  const xRange: [number, number] = [Math.min(...xsAll), Math.max(...xsAll)];
  let yLo = Math.min(0, ...ysAll);
  let yHi = Math.max(...ysAll);
  if (yHi === yLo) yHi = yLo + 1;
  yHi += (yHi - yLo) * 0.05;
  return {
    spec,
    series,
    xTicks: niceTicks(xRange[0], xRange[1]),
    yTicks: niceTicks(yLo, yHi),
    xRange,
    yRange: [yLo, yHi],
  };
}

export function toPixelX(chart: Chart, x: number): number {
  const [lo, hi] = chart.xRange;
  const f = hi === lo ? 0.5 : (x - lo) / (hi - lo);
  return PLOT.x0 + f * (PLOT.x1 - PLOT.x0);
}

export function toPixelY(chart: Chart, y: number): number {
  const [lo, hi] = chart.yRange;
  const f = (y - lo) / (hi - lo);
  return PLOT.y1 - f * (PLOT.y1 - PLOT.y0);
}

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function fmtTick(t: number): string {
  const rounded = Math.round(t * 1e9) / 1e9;
  return String(rounded);
}

export function renderSvg(chart: Chart): string {
  const { spec } = chart;
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  if (spec.title) {
    parts.push(
      `<text x="${(PLOT.x0 + PLOT.x1) / 2}" y="26" text-anchor="middle" font-size="18">` +
        `${escapeXml(spec.title)}</text>`
    );
  }
  // gridlines and ticks
  for (const t of chart.yTicks) {
    const y = toPixelY(chart, t).toFixed(2);
    parts.push(
      `<line x1="${PLOT.x0}" y1="${y}" x2="${PLOT.x1}" y2="${y}" stroke="#dddddd"/>`,
      `<text x="${PLOT.x0 - 8}" y="${y}" text-anchor="end" dominant-baseline="middle" ` +
        `font-size="13">${fmtTick(t)}</text>`
    );
  }
  for (const t of chart.xTicks) {
    const x = toPixelX(chart, t).toFixed(2);
    parts.push(
      `<line x1="${x}" y1="${PLOT.y1}" x2="${x}" y2="${PLOT.y1 + 5}" stroke="#444444"/>`,
      `<text x="${x}" y="${PLOT.y1 + 22}" text-anchor="middle" font-size="13">${fmtTick(t)}</text>`
    );
  }
  // axes
  parts.push(
    `<line x1="${PLOT.x0}" y1="${PLOT.y0}" x2="${PLOT.x0}" y2="${PLOT.y1}" stroke="#444444"/>`,
    `<line x1="${PLOT.x0}" y1="${PLOT.y1}" x2="${PLOT.x1}" y2="${PLOT.y1}" stroke="#444444"/>`
  );
  if (spec.xLabel) {
    parts.push(
      `<text x="${(PLOT.x0 + PLOT.x1) / 2}" y="${HEIGHT - 16}" text-anchor="middle" ` +
        `font-size="15">${escapeXml(spec.xLabel)}</text>`
    );
  }
  if (spec.yLabel) {
    const cy = (PLOT.y0 + PLOT.y1) / 2;
    parts.push(
      `<text x="20" y="${cy}" text-anchor="middle" font-size="15" ` +
        `transform="rotate(-90 20 ${cy})">${escapeXml(spec.yLabel)}</text>`
    );
  }
  // series polylines, raw values embedded verbatim
  for (const s of chart.series) {
    const pts = s.xs
      .map(
        (x, i) =>
          `${toPixelX(chart, parseFloat(x)).toFixed(2)},${toPixelY(chart, parseFloat(s.ys[i])).toFixed(2)}`
      )
      .join(" ");
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    parts.push(
      `<polyline fill="none" stroke="${s.color}" stroke-width="2.5"${dash} points="${pts}" ` +
        `data-series="${escapeXml(s.label)}" data-x="${escapeXml(s.xs.join(";"))}" ` +
        `data-values="${escapeXml(s.ys.join(";"))}"/>`
    );
  }
  // legend
  chart.series.forEach((s, i) => {
    const y = PLOT.y0 + 14 + i * 24;
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    parts.push(
      `<line x1="${PLOT.x1 + 16}" y1="${y}" x2="${PLOT.x1 + 56}" y2="${y}" ` +
        `stroke="${s.color}" stroke-width="2.5"${dash}/>`,
      `<text x="${PLOT.x1 + 64}" y="${y + 4}" font-size="13">${escapeXml(s.label)}</text>`
    );
  });
  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
