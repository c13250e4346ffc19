#!/usr/bin/env node
/**
 * circlelab-plots --input FILE --kind KIND --out FILE.svg
 *                 [--xscale linear|log] [--yscale linear|log] [--title TEXT]
 *
 * Exit codes mirror the producing tool: 0 ok, 1 data/schema error,
 * 64 usage error.
 */

import { parseArgs } from "util";
import { AXIS_SCALES, AxisScale, FIGURE_KINDS, FigureKind, FigureSpec } from "./figure";
import { renderToFile } from "./render";
import { SchemaError } from "./schema";

export const EXIT_OK = 0;
export const EXIT_DATA = 1;
export const EXIT_USAGE = 64;

const USAGE = [
  "usage: circlelab-plots --input FILE --kind KIND --out FILE.svg",
  "                       [--xscale SCALE] [--yscale SCALE] [--title TEXT]",
  `kinds:  ${FIGURE_KINDS.join(", ")}`,
  `scales: ${AXIS_SCALES.join(", ")}`,
].join("\n");

function usageError(message: string): number {
  process.stderr.write(`circlelab-plots: ${message}\n${USAGE}\n`);
  return EXIT_USAGE;
}

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        input: { type: "string", short: "i" },
        kind: { type: "string", short: "k" },
        out: { type: "string", short: "o" },
        xscale: { type: "string" },
        yscale: { type: "string" },
        title: { type: "string" },
        help: { type: "boolean", short: "h" },
      },
      allowPositionals: false,
    });
  } catch (e) {
    return usageError((e as Error).message);
  }
  const v = parsed.values;
  if (v.help) {
    process.stdout.write(USAGE + "\n");
    return EXIT_OK;
  }
  for (const need of ["input", "kind", "out"] as const) {
    if (!v[need]) return usageError(`--${need} is required`);
  }
  if (!FIGURE_KINDS.includes(v.kind as FigureKind)) {
    return usageError(`unknown kind ${JSON.stringify(v.kind)}`);
  }
  for (const scale of [v.xscale, v.yscale]) {
    if (scale !== undefined && !AXIS_SCALES.includes(scale as AxisScale)) {
      return usageError(`unknown scale ${JSON.stringify(scale)}`);
    }
  }
  const spec: FigureSpec = {
    input: v.input as string,
    kind: v.kind as FigureKind,
    output: v.out as string,
    xscale: v.xscale as AxisScale | undefined,
    yscale: v.yscale as AxisScale | undefined,
    title: v.title,
  };
  try {
    renderToFile(spec);
  } catch (e) {
    if (e instanceof SchemaError) {
      process.stderr.write(`circlelab-plots: ${e.message}\n`);
      return EXIT_DATA;
    }
    throw e;
  }
  return EXIT_OK;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
