/**
 * Figure specifications: which CSV, which family, which series.
 *
 * A series is selected by its rule pair (or single rule for tie
 * figures); styling is derived from the scoring system named in the
 * rules, mirroring the convention of solid Plurality and dashed Borda
 * lines.
 */

import { readFileSync } from "fs";

export type Family = "pairwise" | "kemeny" | "displacement" | "ties" | "scaling";

export interface SeriesSpec {
  /** rule id of the first rule (e.g. "seqlose:plurality"), or the only rule for ties */
  ruleA: string;
  /** second rule of the pair; absent for tie figures */
  ruleB?: string;
  /** legend label; defaults to "ruleA vs ruleB" */
  label?: string;
  /** keep only rows whose param column equals this raw string */
  param?: string;
}

export interface FigureSpec {
  csv: string;
  family: Family;
  series: SeriesSpec[];
  xLabel?: string;
  yLabel?: string;
  title?: string;
  /** x column override; scaling figures default to "n" */
  xColumn?: string;
  /** output path without extension; .svg and .png are appended */
  output: string;
}

const FAMILIES: Family[] = ["pairwise", "kemeny", "displacement", "ties", "scaling"];

export function validateSpec(raw: unknown): FigureSpec {
  const spec = raw as Partial<FigureSpec>;
  if (!spec || typeof spec !== "object") {
    throw new Error("figure spec must be a JSON object");
  }
  if (typeof spec.csv !== "string" || spec.csv.length === 0) {
    throw new Error("figure spec needs a 'csv' path");
  }
  if (!spec.family || !FAMILIES.includes(spec.family)) {
    throw new Error(`'family' must be one of ${FAMILIES.join(", ")}`);
  }
  if (!Array.isArray(spec.series) || spec.series.length === 0) {
    throw new Error("'series' must be a non-empty list");
  }
  for (const s of spec.series) {
    if (typeof s.ruleA !== "string") {
      throw new Error("every series needs 'ruleA'");
    }
    if (spec.family !== "ties" && typeof s.ruleB !== "string") {
      throw new Error(`family '${spec.family}' selects series by rule pairs; 'ruleB' missing`);
    }
  }
  if (typeof spec.output !== "string" || spec.output.length === 0) {
    throw new Error("figure spec needs an 'output' path (without extension)");
  }
  return spec as FigureSpec;
}

export function loadSpec(path: string): FigureSpec {
  return validateSpec(JSON.parse(readFileSync(path, "utf-8")));
}

/** Default x-axis column per family. */
export function xColumn(spec: FigureSpec): string {
  if (spec.xColumn) return spec.xColumn;
  switch (spec.family) {
    case "displacement":
      return "position";
    case "scaling":
      return "n";
    default:
      return "param";
  }
}

/** y column per family. */
export function yColumn(spec: FigureSpec): string {
  switch (spec.family) {
    case "displacement":
      return "mean_displacement";
    case "ties":
      return "mean_tie_rounds";
    default:
      return "mean_norm_swap";
  }
}

export function seriesLabel(s: SeriesSpec): string {
  if (s.label) return s.label;
  return s.ruleB ? `${s.ruleA} vs ${s.ruleB}` : s.ruleA;
}

/** Solid for Plurality-based series, dashed for Borda, dotted for Veto. */
export function dashPattern(s: SeriesSpec): string | undefined {
  const text = `${s.ruleA} ${s.ruleB ?? ""}`;
  if (text.includes("borda")) return "10 5";
  if (text.includes("veto")) return "3 4";
  if (text.includes("half")) return "10 3 3 3";
  return undefined;
}

export const PALETTE = [
  "#8b1a1a", // dark red
  "#ff8c00", // orange
  "#228b22", // forest green
  "#1e90ff", // blue
  "#9400d3", // violet
  "#a52a2a", // brown
  "#006d6f", // teal
  "#c71585", // magenta
];
