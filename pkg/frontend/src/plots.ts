import { SchemaMismatch } from "./errors.js";
import type { Field, Profile } from "./csv.js";
import { Raster, BLACK, type RGB } from "./raster.js";
import { fmtTick, makeMap, ticksLinear, ticksLog, type AxisMap } from "./scale.js";
import type { FigureSpec } from "./spec.js";

export const PALETTE: RGB[] = [
  [31, 119, 180],
  [255, 127, 14],
  [44, 160, 44],
  [148, 103, 189],
  [140, 86, 75],
  [227, 119, 194],
];

export const THRESHOLD_COLOR: RGB = [200, 30, 30];
const GRID: RGB = [226, 226, 226];
const AXIS: RGB = [90, 90, 90];

// viridis endpoints and a few interior stops, enough for a smooth ramp
const COLOR_STOPS: RGB[] = [
  [68, 1, 84],
  [62, 74, 137],
  [38, 130, 142],
  [53, 183, 121],
  [180, 222, 44],
  [253, 231, 37],
];

export function heatColor(t: number): RGB {
  const clamped = Math.min(1, Math.max(0, t));
  const pos = clamped * (COLOR_STOPS.length - 1);
  const i = Math.min(COLOR_STOPS.length - 2, Math.floor(pos));
  const frac = pos - i;
  const a = COLOR_STOPS[i];
  const b = COLOR_STOPS[i + 1];
  return [
    Math.round(a[0] + frac * (b[0] - a[0])),
    Math.round(a[1] + frac * (b[1] - a[1])),
    Math.round(a[2] + frac * (b[2] - a[2])),
  ];
}

export interface NamedProfile {
  name: string;
  profile: Profile;
}

export interface ThresholdLine {
  name: string;
  value: number;
}

interface Frame {
  raster: Raster;
  x: AxisMap;
  y: AxisMap;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

interface FrameOpts {
  spec: FigureSpec;
  xLo: number;
  xHi: number;
  yLo: number;
  yHi: number;
  xLabel: string;
  yLabel: string;
  rightPad?: number;
  drawGrid?: boolean;
}

function makeFrame(opts: FrameOpts): Frame {
  const { spec } = opts;
  const raster = new Raster(spec.width, spec.height);
  const top = spec.title ? 34 : 24;
  const left = 64;
  const right = spec.width - (opts.rightPad ?? 18);
  const bottom = spec.height - 44;

  if (spec.title) {
    const w = raster.textWidth(spec.title);
    raster.text(Math.max(4, (spec.width - w) / 2), 6, spec.title, BLACK);
  }
  raster.text(left + 2, top - 12, opts.yLabel, AXIS);
  const xw = raster.textWidth(opts.xLabel);
  raster.text((left + right - xw) / 2, spec.height - 12, opts.xLabel, AXIS);

  const x = makeMap(spec.axes.x, opts.xLo, opts.xHi, left, right);
  const y = makeMap(spec.axes.y, opts.yLo, opts.yHi, bottom, top);

  const xTicks = spec.axes.x === "log" ? ticksLog(opts.xLo, opts.xHi) : ticksLinear(opts.xLo, opts.xHi);
  for (const v of xTicks) {
    const px = Math.round(x(v));
    if (px < left - 1 || px > right + 1) continue;
    if (opts.drawGrid !== false) raster.vline(px, top, bottom, GRID);
    raster.vline(px, bottom, bottom + 4, AXIS);
    const label = fmtTick(v);
    const w = raster.textWidth(label);
    raster.text(Math.min(Math.max(px - w / 2, 2), spec.width - w - 2), bottom + 8, label, AXIS);
  }
  const yTicks = spec.axes.y === "log" ? ticksLog(opts.yLo, opts.yHi) : ticksLinear(opts.yLo, opts.yHi);
  for (const v of yTicks) {
    const py = Math.round(y(v));
    if (py < top - 1 || py > bottom + 1) continue;
    if (opts.drawGrid !== false) raster.hline(py, left, right, GRID);
    raster.hline(py, left - 4, left, AXIS);
    const label = fmtTick(v);
    const w = raster.textWidth(label);
    raster.text(Math.max(2, left - 6 - w), py - 3, label, AXIS);
  }

  raster.vline(left, top, bottom, AXIS);
  raster.hline(bottom, left, right, AXIS);
  return { raster, x, y, left, right, top, bottom };
}

function drawLegend(frame: Frame, entries: { name: string; color: RGB }[]): void {
  const { raster } = frame;
  let yPos = frame.top + 6;
  for (const entry of entries) {
    const w = raster.textWidth(entry.name);
    const xPos = frame.right - w - 22;
    raster.hline(yPos + 3, xPos, xPos + 14, entry.color);
    raster.hline(yPos + 4, xPos, xPos + 14, entry.color);
    raster.text(xPos + 18, yPos, entry.name, BLACK);
    yPos += 12;
  }
}

/** Decay curves over scale, optionally against a dashed threshold line. */
export function renderProfileDecay(spec: FigureSpec, curves: NamedProfile[], threshold?: ThresholdLine): Raster {
  if (curves.length === 0) {
    throw new SchemaMismatch("profile-decay needs at least one curve");
  }
  let xLo = Infinity;
  let xHi = -Infinity;
  let yHi = -Infinity;
  let yLo = Infinity;
  for (const { profile } of curves) {
    for (const s of profile.scales) {
      xLo = Math.min(xLo, s);
      xHi = Math.max(xHi, s);
    }
    for (const v of profile.values) {
      yHi = Math.max(yHi, v);
      yLo = Math.min(yLo, v);
    }
  }
  if (threshold) yHi = Math.max(yHi, threshold.value);
  if (xLo === xHi) {
    xLo *= 0.9;
    xHi /= 0.9;
  }
  let yLoAxis = 0;
  let yHiAxis = yHi <= 0 ? 1 : yHi * 1.08;
  if (spec.axes.y === "log") {
    if (yLo <= 0) {
      throw new SchemaMismatch("log y axis needs strictly positive profile values");
    }
    yLoAxis = yLo / 1.5;
    yHiAxis = yHi * 1.5;
  }

  const frame = makeFrame({
    spec,
    xLo,
    xHi,
    yLo: yLoAxis,
    yHi: yHiAxis,
    xLabel: "scale",
    yLabel: "oscillation",
  });
  const { raster, x, y } = frame;

  if (threshold) {
    const py = Math.round(y(threshold.value));
    raster.dashedHline(py, frame.left, frame.right, THRESHOLD_COLOR);
    const label = `${threshold.name} = ${fmtTick(threshold.value)}`;
    raster.text(frame.left + 6, py - 10, label, THRESHOLD_COLOR);
  }

  curves.forEach(({ profile }, idx) => {
    const color = PALETTE[idx % PALETTE.length];
    const order = profile.scales.map((_, i) => i).sort((a, b) => profile.scales[a] - profile.scales[b]);
    let prev: [number, number] | null = null;
    for (const i of order) {
      const px = x(profile.scales[i]);
      const py = y(profile.values[i]);
      if (prev) raster.line(prev[0], prev[1], px, py, color);
      prev = [px, py];
    }
    for (const i of order) {
      raster.disc(x(profile.scales[i]), y(profile.values[i]), 2, color);
    }
  });

  drawLegend(
    frame,
    curves.map(({ name }, idx) => ({ name, color: PALETTE[idx % PALETTE.length] })),
  );
  return raster;
}

function bandBounds(levels: number[]): number[] {
  if (levels.length === 1) {
    return [levels[0] / Math.SQRT2, levels[0] * Math.SQRT2];
  }
  const bounds: number[] = [];
  bounds.push(levels[0] / Math.sqrt(levels[1] / levels[0]));
  for (let i = 0; i + 1 < levels.length; i++) {
    bounds.push(Math.sqrt(levels[i] * levels[i + 1]));
  }
  const n = levels.length;
  bounds.push(levels[n - 1] * Math.sqrt(levels[n - 1] / levels[n - 2]));
  return bounds;
}

/** |mu| per grid cell, one horizontal band per height level. */
export function renderFieldHeatmap(spec: FigureSpec, field: Field): Raster {
  if (spec.axes.y !== "log") {
    throw new SchemaMismatch("field-heatmap expects a log y axis: the levels are dyadic");
  }
  let xLo = Infinity;
  let xHi = -Infinity;
  let vMax = 0;
  for (const p of field.points) {
    xLo = Math.min(xLo, p.x);
    xHi = Math.max(xHi, p.x);
    vMax = Math.max(vMax, p.absMu);
  }
  if (xLo === xHi) {
    xLo -= 0.5;
    xHi += 0.5;
  }
  const bounds = bandBounds(field.levels);
  const yLo = bounds[0];
  const yHi = bounds[bounds.length - 1];

  const frame = makeFrame({
    spec,
    xLo,
    xHi,
    yLo,
    yHi,
    xLabel: "x",
    yLabel: "height",
    rightPad: 74,
    drawGrid: false,
  });
  const { raster, x, y } = frame;

  field.rows.forEach((row, li) => {
    const pyTop = Math.round(y(bounds[li + 1]));
    const pyBot = Math.round(y(bounds[li]));
    const xs = row.map((p) => p.x);
    for (let i = 0; i < row.length; i++) {
      const lo = i === 0 ? xs[0] - (xs.length > 1 ? (xs[1] - xs[0]) / 2 : 0.5) : (xs[i - 1] + xs[i]) / 2;
      const hi =
        i === row.length - 1 ? xs[i] + (xs.length > 1 ? (xs[i] - xs[i - 1]) / 2 : 0.5) : (xs[i] + xs[i + 1]) / 2;
      const pxLo = Math.max(frame.left + 1, Math.round(x(lo)));
      const pxHi = Math.min(frame.right, Math.round(x(hi)));
      const t = vMax > 0 ? row[i].absMu / vMax : 0;
      raster.fillRect(pxLo, pyTop, pxHi - pxLo + 1, pyBot - pyTop + 1, heatColor(t));
    }
  });

  // colorbar with the data maximum at the top
  const barLeft = frame.right + 16;
  const barW = 12;
  for (let py = frame.top; py <= frame.bottom; py++) {
    const t = (frame.bottom - py) / Math.max(1, frame.bottom - frame.top);
    raster.fillRect(barLeft, py, barW, 1, heatColor(t));
  }
  raster.text(barLeft - 2, frame.top - 12, "|mu|", AXIS);
  raster.text(barLeft + barW + 3, frame.top - 3, fmtTick(vMax), AXIS);
  raster.text(barLeft + barW + 3, frame.bottom - 3, "0", AXIS);

  raster.vline(frame.left, frame.top, frame.bottom, AXIS);
  raster.hline(frame.bottom, frame.left, frame.right, AXIS);
  return raster;
}

/** Pointwise ratio second/first at the scales both profiles share. */
export function renderRatioScatter(spec: FigureSpec, curves: [NamedProfile, NamedProfile]): Raster {
  const [den, num] = curves;
  const byScale = new Map<number, number>();
  den.profile.scales.forEach((s, i) => byScale.set(s, den.profile.values[i]));
  const scales: number[] = [];
  const ratios: number[] = [];
  num.profile.scales.forEach((s, i) => {
    const d = byScale.get(s);
    if (d !== undefined && d !== 0) {
      scales.push(s);
      ratios.push(num.profile.values[i] / d);
    }
  });
  if (scales.length === 0) {
    throw new SchemaMismatch("ratio-scatter: the two profiles share no scale with a nonzero denominator");
  }
  let xLo = Math.min(...scales);
  let xHi = Math.max(...scales);
  if (xLo === xHi) {
    xLo *= 0.9;
    xHi /= 0.9;
  }
  const rMax = Math.max(...ratios, 1);

  const frame = makeFrame({
    spec,
    xLo,
    xHi,
    yLo: 0,
    yHi: rMax * 1.1,
    xLabel: "scale",
    yLabel: `${num.name} / ${den.name}`,
  });
  const { raster, x, y } = frame;

  raster.dashedHline(Math.round(y(1)), frame.left, frame.right, [150, 150, 150]);
  for (let i = 0; i < scales.length; i++) {
    raster.disc(x(scales[i]), y(ratios[i]), 3, PALETTE[0]);
  }
  return raster;
}
