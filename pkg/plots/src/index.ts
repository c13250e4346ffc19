export {
  cellNumber,
  columnNumbers,
  loadTable,
  parseCsv,
  parseDocument,
  SchemaError,
} from "./schema";
export type { Cell, DataTable, Document } from "./schema";
export { AXIS_SCALES, checkSpec, FIGURE_KINDS, figureData } from "./figure";
export type { AxisScale, FigureData, FigureKind, FigureSpec, Series } from "./figure";
export { linearTicks, logTicks } from "./svg";
export type { Tick } from "./svg";
export { renderFigure, renderToFile } from "./render";
export { main } from "./cli";
