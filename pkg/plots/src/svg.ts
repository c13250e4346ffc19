/**
 * Deterministic SVG primitives: fixed canvas, fixed fonts, fixed number
 * formatting, no timestamps or random ids anywhere.  Rendering the same
 * figure twice must produce identical bytes.
 */

export const WIDTH = 800;
export const HEIGHT = 500;
export const MARGIN = { left: 76, right: 24, top: 40, bottom: 52 };

export const FONT = "monospace";
export const SERIES_COLORS = ["#1f77b4", "#d62728"];

/** Coordinates land on a 1/100 px grid so float noise never reaches the file. */
export function fmtCoord(v: number): string {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

/** Tick label for value = mantissa * 10^exponent with decim places known. */
function fixedLabel(value: number, places: number): string {
  const s = value.toFixed(Math.max(0, Math.min(places, 20)));
  return s === "-0" ? "0" : s;
}

export interface Tick {
  value: number;
  label: string;
}

/** Nice 1-2-5 ticks covering [lo, hi]; labels exact for the chosen step. */
export function linearTicks(lo: number, hi: number, target = 6): Tick[] {
  if (!(hi > lo)) {
    return [{ value: lo, label: fixedLabel(lo, 6) }];
  }
  const rawStep = (hi - lo) / target;
  const exp = Math.floor(Math.log10(rawStep));
  const base = Math.pow(10, exp);
  // round to the nearest 1-2-5 multiple (thresholds sqrt(2), sqrt(10), sqrt(50))
  const err = rawStep / base;
  const mant = err >= Math.sqrt(50) ? 10 : err >= Math.sqrt(10) ? 5 : err >= Math.SQRT2 ? 2 : 1;
  const step = mant * base;
  const places = Math.max(0, -exp - (mant === 10 ? 1 : 0));
  const first = Math.ceil(lo / step - 1e-9);
  const last = Math.floor(hi / step + 1e-9);
  const ticks: Tick[] = [];
  for (let i = first; i <= last; i++) {
    const value = i * step + 0; // + 0 folds the i = -0 case onto plain zero
    ticks.push({ value, label: fixedLabel(value, places) });
  }
  return ticks;
}

/** Decade ticks for a positive range, thinned to at most ~8 labels. */
export function logTicks(lo: number, hi: number): Tick[] {
  const eLo = Math.ceil(Math.log10(lo) - 1e-9);
  const eHi = Math.floor(Math.log10(hi) + 1e-9);
  if (eHi < eLo) {
    return [{ value: lo, label: `1e${Math.round(Math.log10(lo))}` }];
  }
  const span = eHi - eLo;
  const stride = Math.max(1, Math.ceil((span + 1) / 8));
  const ticks: Tick[] = [];
  for (let e = eLo; e <= eHi; e += stride) {
    const label = e >= 0 && e <= 4 ? Math.pow(10, e).toFixed(0) : `1e${e}`;
    ticks.push({ value: Math.pow(10, e), label });
  }
  return ticks;
}

export function escapeXml(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function textEl(
  x: number,
  y: number,
  content: string,
  opts: { size?: number; anchor?: string; rotate?: boolean } = {},
): string {
  const size = opts.size ?? 12;
  const anchor = opts.anchor ?? "middle";
  const transform = opts.rotate
    ? ` transform="rotate(-90 ${fmtCoord(x)} ${fmtCoord(y)})"`
    : "";
  return (
    `<text x="${fmtCoord(x)}" y="${fmtCoord(y)}" font-family="${FONT}" ` +
    `font-size="${size}" text-anchor="${anchor}"${transform}>` +
    `${escapeXml(content)}</text>`
  );
}

export function lineEl(
  x1: number,
  y1: number,
  x2: number,
  y2: number,
  stroke: string,
  dash?: string,
): string {
  const d = dash ? ` stroke-dasharray="${dash}"` : "";
  return (
    `<line x1="${fmtCoord(x1)}" y1="${fmtCoord(y1)}" x2="${fmtCoord(x2)}" ` +
    `y2="${fmtCoord(y2)}" stroke="${stroke}" stroke-width="1"${d}/>`
  );
}

export function polylineEl(points: [number, number][], stroke: string): string {
  const pts = points.map(([x, y]) => `${fmtCoord(x)},${fmtCoord(y)}`).join(" ");
  return (
    `<polyline points="${pts}" fill="none" stroke="${stroke}" ` +
    `stroke-width="1.5" stroke-linejoin="round"/>`
  );
}

export function svgDocument(body: string[]): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}">\n` +
    `<rect x="0" y="0" width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>\n` +
    body.join("\n") +
    "\n</svg>\n"
  );
}
