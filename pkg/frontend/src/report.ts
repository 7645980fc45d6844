import { SchemaMismatch } from "./errors.js";

const REPORT_KEYS = ["scenario", "config", "findings", "verdicts", "artifacts"] as const;

/** Scenario report as written next to the CSV artifacts. */
export interface Report {
  scenario: string;
  config: Record<string, unknown>;
  findings: Record<string, unknown>;
  verdicts: Record<string, string>;
  artifacts: Record<string, string>;
}

function isPlainObject(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

export function parseReport(text: string, label = "<report json>"): Report {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new SchemaMismatch(`${label}: not valid JSON: ${(err as Error).message}`);
  }
  if (!isPlainObject(raw)) {
    throw new SchemaMismatch(`${label}: expected a JSON object at the top level`);
  }
  for (const key of REPORT_KEYS) {
    if (!(key in raw)) {
      throw new SchemaMismatch(`${label}: missing key '${key}'`);
    }
  }
  if (typeof raw.scenario !== "string") {
    throw new SchemaMismatch(`${label}: 'scenario' must be a string`);
  }
  for (const key of ["config", "findings", "verdicts", "artifacts"] as const) {
    if (!isPlainObject(raw[key])) {
      throw new SchemaMismatch(`${label}: '${key}' must be an object`);
    }
  }
  return raw as unknown as Report;
}

/** Pull a named numeric threshold out of a report's config echo. */
export function thresholdFrom(report: Report, name: string, label = "<report json>"): number {
  const thresholds = report.config["thresholds"];
  if (!isPlainObject(thresholds)) {
    throw new SchemaMismatch(`${label}: config carries no 'thresholds' section`);
  }
  const value = thresholds[name];
  if (typeof value !== "number" || !Number.isFinite(value)) {
    const known = Object.keys(thresholds).sort().join(", ");
    throw new SchemaMismatch(`${label}: no numeric threshold '${name}' (known: ${known})`);
  }
  return value;
}
