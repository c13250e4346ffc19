/**
 * Figure assembly: load the table, pick the kind's series, scale into the
 * fixed canvas, emit SVG.  This component draws numbers it was given and
 * nothing else; it never recomputes counts, series, or residuals.
 *
 * The output file is written only after the whole figure string exists,
 * so a schema error never leaves a partial image behind.
 */

import * as fs from "fs";
import { AxisScale, checkSpec, FigureData, figureData, FigureSpec } from "./figure";
import { loadTable, SchemaError } from "./schema";
import {
  HEIGHT,
  lineEl,
  linearTicks,
  logTicks,
  MARGIN,
  polylineEl,
  SERIES_COLORS,
  svgDocument,
  textEl,
  Tick,
  WIDTH,
} from "./svg";

interface Axis {
  lo: number;
  hi: number;
  scale: AxisScale;
  map: (v: number) => number;
  ticks: Tick[];
}

function buildAxis(
  values: number[],
  scale: AxisScale,
  r0: number,
  r1: number,
  label: string,
): Axis {
  let lo = Math.min(...values);
  let hi = Math.max(...values);
  if (scale === "log") {
    if (lo <= 0) {
      throw new SchemaError(
        `${label} axis: log scale needs positive values, found ${lo}`,
      );
    }
    const pad = Math.max((Math.log10(hi) - Math.log10(lo)) * 0.03, 0.01);
    lo = Math.pow(10, Math.log10(lo) - pad);
    hi = Math.pow(10, Math.log10(hi) + pad);
    const la = Math.log10(lo);
    const lb = Math.log10(hi);
    return {
      lo,
      hi,
      scale,
      map: (v) => r0 + ((Math.log10(v) - la) / (lb - la)) * (r1 - r0),
      ticks: logTicks(lo, hi),
    };
  }
  const span = hi - lo;
  const pad = span > 0 ? span * 0.05 : Math.max(1, Math.abs(lo)) * 0.05;
  lo -= pad;
  hi += pad;
  return {
    lo,
    hi,
    scale,
    map: (v) => r0 + ((v - lo) / (hi - lo)) * (r1 - r0),
    ticks: linearTicks(lo, hi),
  };
}

function assemble(data: FigureData, title: string | undefined): string {
  const left = MARGIN.left;
  const right = WIDTH - MARGIN.right;
  const top = MARGIN.top;
  const bottom = HEIGHT - MARGIN.bottom;
  const xs = data.series.flatMap((s) => s.x);
  const ys = data.series.flatMap((s) => s.y);
  const xAxis = buildAxis(xs, data.xscale, left, right, "x");
  const yAxis = buildAxis(ys, data.yscale, bottom, top, "y");

  const body: string[] = [];
  if (title) {
    body.push(textEl((left + right) / 2, top - 18, title, { size: 14 }));
  }
  // frame
  body.push(lineEl(left, bottom, right, bottom, "#000000"));
  body.push(lineEl(left, bottom, left, top, "#000000"));
  // ticks
  for (const t of xAxis.ticks) {
    const px = xAxis.map(t.value);
    if (px < left - 0.01 || px > right + 0.01) continue;
    body.push(lineEl(px, bottom, px, bottom + 5, "#000000"));
    body.push(textEl(px, bottom + 19, t.label));
  }
  for (const t of yAxis.ticks) {
    const py = yAxis.map(t.value);
    if (py > bottom + 0.01 || py < top - 0.01) continue;
    body.push(lineEl(left - 5, py, left, py, "#000000"));
    body.push(textEl(left - 9, py + 4, t.label, { anchor: "end" }));
  }
  // zero line when it crosses a linear y range
  if (data.yscale === "linear" && yAxis.lo < 0 && yAxis.hi > 0) {
    const py = yAxis.map(0);
    body.push(lineEl(left, py, right, py, "#999999", "4 3"));
  }
  // series
  data.series.forEach((s, i) => {
    const pts: [number, number][] = s.x.map((vx, j) => [
      xAxis.map(vx),
      yAxis.map(s.y[j]),
    ]);
    body.push(polylineEl(pts, SERIES_COLORS[i % SERIES_COLORS.length]));
  });
  // legend only when there is a choice to explain
  if (data.series.length > 1) {
    data.series.forEach((s, i) => {
      const ly = top + 14 + 16 * i;
      body.push(lineEl(right - 150, ly - 4, right - 126, ly - 4, SERIES_COLORS[i]));
      body.push(textEl(right - 120, ly, s.name, { anchor: "start" }));
    });
  }
  // axis labels
  body.push(textEl((left + right) / 2, HEIGHT - 14, data.xLabel));
  body.push(textEl(18, (top + bottom) / 2, data.yLabel, { rotate: true }));
  return svgDocument(body);
}

/** Render a figure spec to an SVG string. */
export function renderFigure(spec: FigureSpec): string {
  checkSpec(spec);
  const table = loadTable(spec.input);
  const data = figureData(spec.kind, table);
  if (spec.xscale) data.xscale = spec.xscale;
  if (spec.yscale) data.yscale = spec.yscale;
  return assemble(data, spec.title);
}

/** Render and write; nothing is written unless rendering succeeded. */
export function renderToFile(spec: FigureSpec): void {
  const svg = renderFigure(spec);
  fs.writeFileSync(spec.output, svg, "utf-8");
}
