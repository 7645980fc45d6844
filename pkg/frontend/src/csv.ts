import { SchemaMismatch } from "./errors.js";

export const PROFILE_HEADER = "scale,value,argmax_center";
export const FIELD_HEADER = "x,y,re_mu,im_mu,abs_mu";

/** Decay profile: one oscillation (or mass) value per scale, coarse first. */
export interface Profile {
  scales: number[];
  values: number[];
  argmaxCenters: number[];
}

export interface FieldPoint {
  x: number;
  y: number;
  reMu: number;
  imMu: number;
  absMu: number;
}

/** Dilatation samples grouped into horizontal levels, one per distinct y. */
export interface Field {
  points: FieldPoint[];
  /** Distinct heights, ascending. */
  levels: number[];
  /** Points of each level sorted by x, aligned with `levels`. */
  rows: FieldPoint[][];
}

function dataLines(text: string): string[] {
  return text.split(/\r?\n/).filter((line) => line.trim().length > 0);
}

function parseCell(cell: string, label: string, line: number, column: string): number {
  const trimmed = cell.trim();
  const value = trimmed.length > 0 ? Number(trimmed) : NaN;
  if (!Number.isFinite(value)) {
    throw new SchemaMismatch(`${label}: line ${line}: column '${column}' is not a finite number (got '${cell}')`);
  }
  return value;
}

function checkHeader(lines: string[], expected: string, label: string): void {
  if (lines.length === 0) {
    throw new SchemaMismatch(`${label}: empty file, expected header '${expected}'`);
  }
  if (lines[0].trim() !== expected) {
    throw new SchemaMismatch(`${label}: bad header '${lines[0].trim()}', expected '${expected}'`);
  }
  if (lines.length === 1) {
    throw new SchemaMismatch(`${label}: header only, no data rows`);
  }
}

export function parseProfileCsv(text: string, label = "<profile csv>"): Profile {
  const lines = dataLines(text);
  checkHeader(lines, PROFILE_HEADER, label);
  const columns = PROFILE_HEADER.split(",");
  const scales: number[] = [];
  const values: number[] = [];
  const argmaxCenters: number[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== 3) {
      throw new SchemaMismatch(`${label}: line ${i + 1}: expected 3 comma-separated cells, got ${cells.length}`);
    }
    const scale = parseCell(cells[0], label, i + 1, columns[0]);
    if (scale <= 0) {
      throw new SchemaMismatch(`${label}: line ${i + 1}: scale must be positive, got ${scale}`);
    }
    scales.push(scale);
    values.push(parseCell(cells[1], label, i + 1, columns[1]));
    argmaxCenters.push(parseCell(cells[2], label, i + 1, columns[2]));
  }
  return { scales, values, argmaxCenters };
}

export function parseFieldCsv(text: string, label = "<field csv>"): Field {
  const lines = dataLines(text);
  checkHeader(lines, FIELD_HEADER, label);
  const columns = FIELD_HEADER.split(",");
  const points: FieldPoint[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== 5) {
      throw new SchemaMismatch(`${label}: line ${i + 1}: expected 5 comma-separated cells, got ${cells.length}`);
    }
    const parsed = cells.map((cell, j) => parseCell(cell, label, i + 1, columns[j]));
    const [x, y, reMu, imMu, absMu] = parsed;
    if (y <= 0) {
      throw new SchemaMismatch(`${label}: line ${i + 1}: y must be positive, got ${y}`);
    }
    points.push({ x, y, reMu, imMu, absMu });
  }
  const byLevel = new Map<number, FieldPoint[]>();
  for (const p of points) {
    const row = byLevel.get(p.y);
    if (row) row.push(p);
    else byLevel.set(p.y, [p]);
  }
  const levels = [...byLevel.keys()].sort((a, b) => a - b);
  const rows = levels.map((y) => byLevel.get(y)!.slice().sort((a, b) => a.x - b.x));
  return { points, levels, rows };
}
