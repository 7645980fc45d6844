import type { AxisScale } from "./spec.js";

/** Map data values to pixel coordinates along one axis. */
export interface AxisMap {
  (value: number): number;
}

export function makeMap(scale: AxisScale, lo: number, hi: number, pxLo: number, pxHi: number): AxisMap {
  if (scale === "log") {
    if (lo <= 0 || hi <= 0) {
      throw new Error(`log axis needs positive bounds, got [${lo}, ${hi}]`);
    }
    const la = Math.log(lo);
    const lb = Math.log(hi);
    const span = lb - la || 1;
    return (v) => pxLo + ((Math.log(v) - la) / span) * (pxHi - pxLo);
  }
  const span = hi - lo || 1;
  return (v) => pxLo + ((v - lo) / span) * (pxHi - pxLo);
}

/** Round outward to a tidy step so tick labels stay short. */
export function ticksLinear(lo: number, hi: number, target = 5): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / target;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  let step = mag;
  for (const m of [1, 2, 2.5, 5, 10]) {
    if (m * mag >= rawStep) {
      step = m * mag;
      break;
    }
  }
  const first = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = first; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

/**
 * Powers of ten inside the range; fall back to powers of two when the span
 * covers fewer than two decades (the dyadic grids live there).
 */
export function ticksLog(lo: number, hi: number): number[] {
  const decades: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-9); Math.pow(10, e) <= hi * (1 + 1e-9); e++) {
    decades.push(Math.pow(10, e));
  }
  if (decades.length >= 2) return decades;
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log2(lo) - 1e-9); Math.pow(2, e) <= hi * (1 + 1e-9); e++) {
    ticks.push(Math.pow(2, e));
  }
  return ticks.length > 0 ? ticks : [lo, hi];
}

export function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) {
    return v.toExponential(0).replace("e", "e");
  }
  const s = v.toPrecision(4);
  return s.includes(".") ? s.replace(/0+$/, "").replace(/\.$/, "") : s;
}
