/**
 * Minimal PNG writer and chart rasterizer: no native dependencies.
 *
 * The raster is a plain RGBA buffer; lines are drawn with a thin
 * anti-alias-free Bresenham walk (dashes approximated by accumulated
 * segment length), which is plenty for a companion raster of the SVG.
 */

import { deflateSync } from "zlib";
import { Chart, PLOT, toPixelX, toPixelY } from "./chart.js";

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(buf: Buffer): number {
  let crc = 0xffffffff;
  for (const byte of buf) {
    crc = CRC_TABLE[(crc ^ byte) & 0xff] ^ (crc >>> 8);
  }
  return (crc ^ 0xffffffff) >>> 0;
}

function chunk(type: string, data: Buffer): Buffer {
  const len = Buffer.alloc(4);
  len.writeUInt32BE(data.length);
  const body = Buffer.concat([Buffer.from(type, "ascii"), data]);
  const crc = Buffer.alloc(4);
  crc.writeUInt32BE(crc32(body));
  return Buffer.concat([len, body, crc]);
}

export class Raster {
  data: Uint8Array;

  constructor(public width: number, public height: number) {
    this.data = new Uint8Array(width * height * 4).fill(255);
  }

  set(x: number, y: number, rgb: [number, number, number]) {
    x = Math.round(x);
    y = Math.round(y);
    if (x < 0 || y < 0 || x >= this.width || y >= this.height) return;
    const i = (y * this.width + x) * 4;
    this.data[i] = rgb[0];
    this.data[i + 1] = rgb[1];
    this.data[i + 2] = rgb[2];
    this.data[i + 3] = 255;
  }

  /** 2px-thick segment; dash = [on, off] pixel lengths. */
  line(
    x0: number,
    y0: number,
    x1: number,
    y1: number,
    rgb: [number, number, number],
    dash?: [number, number],
    phase = 0
  ): number {
    const dx = x1 - x0;
    const dy = y1 - y0;
    const steps = Math.max(Math.abs(dx), Math.abs(dy), 1);
    let along = phase;
    for (let i = 0; i <= steps; i++) {
      const x = x0 + (dx * i) / steps;
      const y = y0 + (dy * i) / steps;
      along += Math.hypot(dx, dy) / steps;
      if (dash) {
        const period = dash[0] + dash[1];
        if (along % period > dash[0]) continue;
      }
      this.set(x, y, rgb);
      this.set(x + 1, y, rgb);
      this.set(x, y + 1, rgb);
    }
    return along;
  }

  toPng(): Buffer {
    const ihdr = Buffer.alloc(13);
    ihdr.writeUInt32BE(this.width, 0);
    ihdr.writeUInt32BE(this.height, 4);
    ihdr[8] = 8; // bit depth
    ihdr[9] = 6; // RGBA
    const stride = this.width * 4;
    const raw = Buffer.alloc((stride + 1) * this.height);
    for (let y = 0; y < this.height; y++) {
      raw[y * (stride + 1)] = 0; // filter: none
      raw.set(this.data.subarray(y * stride, (y + 1) * stride), y * (stride + 1) + 1);
    }
    return Buffer.concat([
      Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
      chunk("IHDR", ihdr),
      chunk("IDAT", deflateSync(raw, { level: 9 })),
      chunk("IEND", Buffer.alloc(0)),
    ]);
  }
}

function hexToRgb(hex: string): [number, number, number] {
  return [
    parseInt(hex.slice(1, 3), 16),
    parseInt(hex.slice(3, 5), 16),
    parseInt(hex.slice(5, 7), 16),
  ];
}

function dashPixels(dash?: string): [number, number] | undefined {
  if (!dash) return undefined;
  const parts = dash.split(/\s+/).map(Number);
  return [parts[0], parts[1] ?? parts[0]];
}

/** Raster twin of the SVG: axes, gridlines, and the series polylines. */
export function renderPng(chart: Chart): Buffer {
  const raster = new Raster(PLOT.width, PLOT.height);
  const grey: [number, number, number] = [221, 221, 221];
  const dark: [number, number, number] = [68, 68, 68];
  for (const t of chart.yTicks) {
    const y = toPixelY(chart, t);
    raster.line(PLOT.x0, y, PLOT.x1, y, grey);
  }
  raster.line(PLOT.x0, PLOT.y0, PLOT.x0, PLOT.y1, dark);
  raster.line(PLOT.x0, PLOT.y1, PLOT.x1, PLOT.y1, dark);
  for (const t of chart.xTicks) {
    const x = toPixelX(chart, t);
    raster.line(x, PLOT.y1, x, PLOT.y1 + 5, dark);
  }
  for (const s of chart.series) {
    const rgb = hexToRgb(s.color);
    const dash = dashPixels(s.dash);
    let phase = 0;
    for (let i = 0; i + 1 < s.xs.length; i++) {
      phase = raster.line(
        toPixelX(chart, parseFloat(s.xs[i])),
        toPixelY(chart, parseFloat(s.ys[i])),
        toPixelX(chart, parseFloat(s.xs[i + 1])),
        toPixelY(chart, parseFloat(s.ys[i + 1])),
        rgb,
        dash,
        phase
      );
    }
  }
  return raster.toPng();
}
