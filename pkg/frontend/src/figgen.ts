#!/usr/bin/env node
/**
 * figgen — render seqrank experiment CSVs into line-chart figures.
 *
 * Usage:
 *   figgen --spec <figure-spec.json> [--spec <another.json> ...]
 *
 * Each spec produces <output>.svg and <output>.png.  Rendering is a
 * pure function of the CSV bytes and the spec; plotted values are the
 * CSV strings verbatim (also embedded in the SVG as data attributes).
 * Exits 1 with the offending column on schema mismatches.
 */

import { mkdirSync, readFileSync, writeFileSync } from "fs";
import { dirname } from "path";
import { buildChart, renderSvg } from "./chart.js";
import { parseCsv, SchemaError } from "./csv.js";
import { renderPng } from "./png.js";
import { FigureSpec, loadSpec } from "./spec.js";

export interface RenderResult {
  svgPath: string;
  pngPath: string;
  seriesCount: number;
}

export function render(spec: FigureSpec): RenderResult {
  const table = parseCsv(readFileSync(spec.csv, "utf-8"));
  const chart = buildChart(spec, table);
  const svgPath = `${spec.output}.svg`;
  const pngPath = `${spec.output}.png`;
  mkdirSync(dirname(svgPath), { recursive: true });
  writeFileSync(svgPath, renderSvg(chart));
  writeFileSync(pngPath, renderPng(chart));
  return { svgPath, pngPath, seriesCount: chart.series.length };
}

export function main(argv: string[]): number {
  const specs: string[] = [];
  for (let i = 0; i < argv.length; i++) {
    if (argv[i] === "--spec") {
      const value = argv[++i];
      if (!value) {
        console.error("usage: figgen --spec <figure-spec.json> [--spec ...]");
        return 2;
      }
      specs.push(value);
    } else {
      console.error(`unknown argument: ${argv[i]}`);
      return 2;
    }
  }
  if (specs.length === 0) {
    console.error("usage: figgen --spec <figure-spec.json> [--spec ...]");
    return 2;
  }
  try {
    for (const path of specs) {
      const result = render(loadSpec(path));
      console.log(`${result.svgPath} + ${result.pngPath} (${result.seriesCount} series)`);
    }
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema mismatch: ${err.message}`);
    } else {
      console.error(`error: ${(err as Error).message}`);
    }
    return 1;
  }
  return 0;
}

const entry = process.argv[1] ?? "";
if (entry.endsWith("figgen.js") || entry.endsWith("figgen.ts")) {
  process.exit(main(process.argv.slice(2)));
}
