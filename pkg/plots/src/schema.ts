/**
 * Input-side contract: the CSV and JSON files the circlelab tool emits.
 *
 * CSV: header row then data rows, decimal point, LF endings.  Non-finite
 * floats are spelled inf / -inf / nan.  JSON: an object with a meta
 * envelope {tool, version, command, params} plus either a rows array or
 * command-specific payload keys (summary, claims, ...).  Parsing keeps
 * cells as raw strings; numeric conversion happens when a figure kind
 * selects its columns, so files with text columns (the claims table)
 * still parse.
 */

import * as fs from "fs";
import * as path from "path";
import Papa from "papaparse";
import { z } from "zod";

export class SchemaError extends Error {}

export type Cell = string | number;

export interface DataTable {
  columns: string[];
  rows: Record<string, Cell>[];
}

const metaSchema = z.object({
  tool: z.literal("circlelab"),
  version: z.string(),
  command: z.string(),
  params: z.record(z.string(), z.unknown()),
});

const documentSchema = z.looseObject({
  meta: metaSchema,
  rows: z.array(z.record(z.string(), z.unknown())).optional(),
});

export type Document = z.infer<typeof documentSchema>;

export function cellNumber(raw: Cell, column: string, row: number): number {
  if (typeof raw === "number") return raw;
  const s = raw.trim();
  if (s === "inf") return Infinity;
  if (s === "-inf") return -Infinity;
  if (s === "nan") return NaN;
  const v = s === "" ? NaN : Number(s);
  if (Number.isNaN(v)) {
    throw new SchemaError(
      `non-numeric cell ${JSON.stringify(raw)} in column ${column}, data row ${row}`,
    );
  }
  return v;
}

export function parseCsv(text: string): DataTable {
  const parsed = Papa.parse<Record<string, string>>(text, {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new SchemaError(`CSV parse error: ${e.message} (row ${e.row})`);
  }
  const columns = parsed.meta.fields ?? [];
  if (columns.length === 0 || (columns.length === 1 && columns[0] === "")) {
    throw new SchemaError("CSV has no header row");
  }
  if (parsed.data.length === 0) {
    throw new SchemaError("CSV has a header but no data rows");
  }
  for (let i = 0; i < parsed.data.length; i++) {
    const keys = Object.keys(parsed.data[i]);
    if (keys.length !== columns.length || keys.some((k, j) => k !== columns[j])) {
      throw new SchemaError(`data row ${i} does not match the header layout`);
    }
  }
  return { columns, rows: parsed.data };
}

export function parseDocument(text: string): Document {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (e) {
    throw new SchemaError(`not valid JSON: ${(e as Error).message}`);
  }
  const result = documentSchema.safeParse(raw);
  if (!result.success) {
    throw new SchemaError(
      `not a circlelab document: ${result.error.issues[0]?.message ?? "bad shape"}`,
    );
  }
  return result.data;
}

function tableFromDocument(doc: Document): DataTable {
  if (!doc.rows || doc.rows.length === 0) {
    throw new SchemaError(
      `document from command ${JSON.stringify(doc.meta.command)} has no rows to plot`,
    );
  }
  const columns = Object.keys(doc.rows[0]);
  const rows: Record<string, Cell>[] = [];
  doc.rows.forEach((row, i) => {
    const keys = Object.keys(row);
    if (keys.length !== columns.length || columns.some((c) => !(c in row))) {
      throw new SchemaError(`rows[${i}] does not match the first row's columns`);
    }
    const out: Record<string, Cell> = {};
    for (const c of columns) {
      const v = row[c];
      if (typeof v !== "number" && typeof v !== "string") {
        throw new SchemaError(`rows[${i}].${c} is not a number or string`);
      }
      out[c] = v;
    }
    rows.push(out);
  });
  return { columns, rows };
}

/** Load a CSV or JSON file into a uniform table (dispatch on extension). */
export function loadTable(file: string): DataTable {
  let text: string;
  try {
    text = fs.readFileSync(file, "utf-8");
  } catch (e) {
    throw new SchemaError(`cannot read ${file}: ${(e as Error).message}`);
  }
  if (path.extname(file).toLowerCase() === ".json") {
    return tableFromDocument(parseDocument(text));
  }
  return parseCsv(text);
}

/** Numeric view of one column, validating every cell. */
export function columnNumbers(table: DataTable, column: string): number[] {
  if (!table.columns.includes(column)) {
    throw new SchemaError(`missing column ${column}`);
  }
  return table.rows.map((row, i) => cellNumber(row[column], column, i));
}
