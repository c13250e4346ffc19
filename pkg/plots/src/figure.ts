/**
 * Figure parameters and the column contracts of each figure kind.
 *
 * A figure kind accepts an exact column set (one of a few variants);
 * anything else is rejected with the unknown and missing columns named.
 * Non-finite points are dropped from the drawn series (the x = 0 record
 * has normalized = inf by construction); a series with no finite points
 * left is an error, not an empty plot.
 */

import { columnNumbers, DataTable, SchemaError } from "./schema";

export const FIGURE_KINDS = [
  "delta_trace",
  "normalized_trace",
  "convergence_ladder",
  "residual",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export const AXIS_SCALES = ["linear", "log"] as const;

export type AxisScale = (typeof AXIS_SCALES)[number];

export interface FigureSpec {
  input: string;
  kind: FigureKind;
  output: string;
  xscale?: AxisScale;
  yscale?: AxisScale;
  title?: string;
}

export interface Series {
  name: string;
  x: number[];
  y: number[];
}

export interface FigureData {
  xLabel: string;
  yLabel: string;
  series: Series[];
  xscale: AxisScale;
  yscale: AxisScale;
}

const RECORD_COLUMNS = ["x", "count", "pi_x", "delta", "normalized"];
const LADDER_COLUMNS = ["terms", "value", "window_mean", "sup_so_far"];
const LADDER_RESIDUAL_COLUMNS = [...LADDER_COLUMNS, "residual", "window_residual"];
const CLOSED_FORM_VARIANTS = [
  ["a", "m_terms", "lhs", "rhs", "residual"],
  ["eps", "x", "y", "m_terms", "lhs", "rhs", "residual"],
  ["x", "m_terms", "lhs", "rhs", "residual"],
];

function sameSet(a: string[], b: string[]): boolean {
  return a.length === b.length && a.every((v) => b.includes(v));
}

function requireColumns(table: DataTable, variants: string[][], kind: string): string[] {
  for (const v of variants) {
    if (sameSet(table.columns, v)) return v;
  }
  const allowed = variants[0];
  const unknown = table.columns.filter((c) => !variants.some((v) => v.includes(c)));
  const missing = allowed.filter((c) => !table.columns.includes(c));
  const parts = [];
  if (unknown.length) parts.push(`unknown columns [${unknown.join(", ")}]`);
  if (missing.length) parts.push(`missing columns [${missing.join(", ")}]`);
  throw new SchemaError(
    `columns [${table.columns.join(", ")}] do not match the ${kind} contract: ` +
      (parts.join("; ") || "wrong combination"),
  );
}

function dropNonFinite(series: Series, kind: string): Series {
  const x: number[] = [];
  const y: number[] = [];
  for (let i = 0; i < series.x.length; i++) {
    if (Number.isFinite(series.x[i]) && Number.isFinite(series.y[i])) {
      x.push(series.x[i]);
      y.push(series.y[i]);
    }
  }
  if (x.length === 0) {
    throw new SchemaError(`${kind}: series ${series.name} has no finite points`);
  }
  return { name: series.name, x, y };
}

function traceData(table: DataTable, yColumn: string, kind: FigureKind): FigureData {
  requireColumns(table, [RECORD_COLUMNS], kind);
  const x = columnNumbers(table, "x");
  const y = columnNumbers(table, yColumn);
  return {
    xLabel: "x",
    yLabel: yColumn,
    series: [dropNonFinite({ name: yColumn, x, y }, kind)],
    xscale: "linear",
    yscale: "linear",
  };
}

function ladderData(table: DataTable): FigureData {
  requireColumns(table, [LADDER_RESIDUAL_COLUMNS, LADDER_COLUMNS], "convergence_ladder");
  const terms = columnNumbers(table, "terms");
  const names = table.columns.includes("residual")
    ? ["residual", "window_residual"]
    : ["value", "window_mean"];
  const series = names.map((name) =>
    dropNonFinite({ name, x: terms, y: columnNumbers(table, name) }, "convergence_ladder"),
  );
  return { xLabel: "terms", yLabel: names[0], series, xscale: "log", yscale: "linear" };
}

function residualData(table: DataTable): FigureData {
  requireColumns(table, CLOSED_FORM_VARIANTS, "residual");
  const cuts = columnNumbers(table, "m_terms");
  const res = columnNumbers(table, "residual");
  return {
    xLabel: "m_terms",
    yLabel: "residual",
    series: [dropNonFinite({ name: "residual", x: cuts, y: res }, "residual")],
    xscale: "log",
    yscale: "linear",
  };
}

/** Extract the drawable series for a figure kind, with per-kind scale defaults. */
export function figureData(kind: FigureKind, table: DataTable): FigureData {
  switch (kind) {
    case "delta_trace":
      return traceData(table, "delta", kind);
    case "normalized_trace":
      return traceData(table, "normalized", kind);
    case "convergence_ladder":
      return ladderData(table);
    case "residual":
      return residualData(table);
  }
}

export function checkSpec(spec: FigureSpec): void {
  if (!FIGURE_KINDS.includes(spec.kind)) {
    throw new SchemaError(
      `unknown figure kind ${JSON.stringify(spec.kind)}; expected one of ${FIGURE_KINDS.join(", ")}`,
    );
  }
  for (const scale of [spec.xscale, spec.yscale]) {
    if (scale !== undefined && !AXIS_SCALES.includes(scale)) {
      throw new SchemaError(`unknown axis scale ${JSON.stringify(scale)}`);
    }
  }
  if (!spec.output.toLowerCase().endsWith(".svg")) {
    throw new SchemaError(`output must be an .svg path, got ${spec.output}`);
  }
}
