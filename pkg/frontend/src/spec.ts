import { SchemaMismatch } from "./errors.js";

export type FigureKind = "profile-decay" | "field-heatmap" | "ratio-scatter";
export type AxisScale = "log" | "linear";

export interface Axes {
  x: AxisScale;
  y: AxisScale;
}

/** One figure to render: input artifacts, plot kind, axis scales, output path. */
export interface FigureSpec {
  kind: FigureKind;
  inputs: string[];
  output: string;
  axes: Axes;
  /** Report whose echoed thresholds supply the reference line. */
  report?: string;
  /** Name of the threshold to draw, looked up in the report's config echo. */
  threshold?: string;
  title?: string;
  width: number;
  height: number;
}

const KINDS: ReadonlySet<string> = new Set(["profile-decay", "field-heatmap", "ratio-scatter"]);
const SCALES: ReadonlySet<string> = new Set(["log", "linear"]);
const KNOWN_KEYS: ReadonlySet<string> = new Set([
  "kind",
  "inputs",
  "output",
  "axes",
  "report",
  "threshold",
  "title",
  "width",
  "height",
]);

const DEFAULT_AXES: Record<FigureKind, Axes> = {
  "profile-decay": { x: "log", y: "linear" },
  "field-heatmap": { x: "linear", y: "log" },
  "ratio-scatter": { x: "log", y: "linear" },
};

function isPlainObject(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function parseAxes(raw: unknown, kind: FigureKind, label: string): Axes {
  if (raw === undefined) {
    return { ...DEFAULT_AXES[kind] };
  }
  if (!isPlainObject(raw)) {
    throw new SchemaMismatch(`${label}: 'axes' must be an object with 'x' and 'y'`);
  }
  const axes = { ...DEFAULT_AXES[kind] };
  for (const [key, value] of Object.entries(raw)) {
    if (key !== "x" && key !== "y") {
      throw new SchemaMismatch(`${label}: unknown axes key '${key}'`);
    }
    if (typeof value !== "string" || !SCALES.has(value)) {
      throw new SchemaMismatch(`${label}: axes.${key} must be 'log' or 'linear'`);
    }
    axes[key] = value as AxisScale;
  }
  return axes;
}

function parseDimension(raw: unknown, key: string, fallback: number, label: string): number {
  if (raw === undefined) return fallback;
  if (typeof raw !== "number" || !Number.isInteger(raw) || raw < 160 || raw > 4096) {
    throw new SchemaMismatch(`${label}: '${key}' must be an integer in [160, 4096]`);
  }
  return raw;
}

export function parseFigureSpec(raw: unknown, label = "<figure spec>"): FigureSpec {
  if (!isPlainObject(raw)) {
    throw new SchemaMismatch(`${label}: each figure must be a JSON object`);
  }
  for (const key of Object.keys(raw)) {
    if (!KNOWN_KEYS.has(key)) {
      throw new SchemaMismatch(`${label}: unknown key '${key}'`);
    }
  }
  const kind = raw.kind;
  if (typeof kind !== "string" || !KINDS.has(kind)) {
    throw new SchemaMismatch(`${label}: 'kind' must be one of ${[...KINDS].join(", ")}`);
  }
  const inputs = raw.inputs;
  if (!Array.isArray(inputs) || inputs.length === 0 || !inputs.every((p) => typeof p === "string" && p.length > 0)) {
    throw new SchemaMismatch(`${label}: 'inputs' must be a non-empty array of paths`);
  }
  if (kind === "field-heatmap" && inputs.length !== 1) {
    throw new SchemaMismatch(`${label}: field-heatmap takes exactly one input, got ${inputs.length}`);
  }
  if (kind === "ratio-scatter" && inputs.length !== 2) {
    throw new SchemaMismatch(`${label}: ratio-scatter takes exactly two inputs, got ${inputs.length}`);
  }
  const output = raw.output;
  if (typeof output !== "string" || !output.toLowerCase().endsWith(".png")) {
    throw new SchemaMismatch(`${label}: 'output' must be a .png path`);
  }
  const report = raw.report;
  if (report !== undefined && typeof report !== "string") {
    throw new SchemaMismatch(`${label}: 'report' must be a path`);
  }
  const threshold = raw.threshold;
  if (threshold !== undefined && typeof threshold !== "string") {
    throw new SchemaMismatch(`${label}: 'threshold' must be a threshold name`);
  }
  if (threshold !== undefined && report === undefined) {
    throw new SchemaMismatch(`${label}: 'threshold' needs a 'report' to read it from`);
  }
  const title = raw.title;
  if (title !== undefined && typeof title !== "string") {
    throw new SchemaMismatch(`${label}: 'title' must be a string`);
  }
  return {
    kind: kind as FigureKind,
    inputs: inputs.slice(),
    output,
    axes: parseAxes(raw.axes, kind as FigureKind, label),
    report: report as string | undefined,
    threshold: threshold as string | undefined,
    title: title as string | undefined,
    width: parseDimension(raw.width, "width", 720, label),
    height: parseDimension(raw.height, "height", 440, label),
  };
}

/** Accept one figure object or an array of them. */
export function parseFigureSpecs(text: string, label = "<spec json>"): FigureSpec[] {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new SchemaMismatch(`${label}: not valid JSON: ${(err as Error).message}`);
  }
  const items = Array.isArray(raw) ? raw : [raw];
  if (items.length === 0) {
    throw new SchemaMismatch(`${label}: spec array is empty`);
  }
  return items.map((item, i) => parseFigureSpec(item, items.length === 1 ? label : `${label}[${i}]`));
}
