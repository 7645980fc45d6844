import { existsSync, readFileSync } from "node:fs";
import { basename, isAbsolute, resolve } from "node:path";

import { parseFieldCsv, parseProfileCsv } from "./csv.js";
import { SchemaMismatch } from "./errors.js";
import { encodePng } from "./png.js";
import { renderFieldHeatmap, renderProfileDecay, renderRatioScatter, type NamedProfile, type ThresholdLine } from "./plots.js";
import { parseReport, thresholdFrom } from "./report.js";
import type { FigureSpec } from "./spec.js";

function resolveAgainst(baseDir: string, p: string): string {
  return isAbsolute(p) ? p : resolve(baseDir, p);
}

function readInput(baseDir: string, p: string): { label: string; text: string } {
  const full = resolveAgainst(baseDir, p);
  if (!existsSync(full)) {
    throw new SchemaMismatch(`input path does not exist: ${p}`);
  }
  return { label: p, text: readFileSync(full, "utf8") };
}

function curveName(p: string): string {
  return basename(p).replace(/\.csv$/i, "");
}

/** Render one figure to PNG bytes; relative paths resolve against baseDir. */
export function renderSpec(spec: FigureSpec, baseDir: string): Buffer {
  let threshold: ThresholdLine | undefined;
  if (spec.report !== undefined) {
    const { label, text } = readInput(baseDir, spec.report);
    const report = parseReport(text, label);
    if (spec.threshold !== undefined) {
      threshold = { name: spec.threshold, value: thresholdFrom(report, spec.threshold, label) };
    }
  }

  if (spec.kind === "field-heatmap") {
    const { label, text } = readInput(baseDir, spec.inputs[0]);
    const field = parseFieldCsv(text, label);
    const raster = renderFieldHeatmap(spec, field);
    return encodePng(raster.width, raster.height, raster.data);
  }

  const curves: NamedProfile[] = spec.inputs.map((p) => {
    const { label, text } = readInput(baseDir, p);
    return { name: curveName(p), profile: parseProfileCsv(text, label) };
  });

  if (spec.kind === "ratio-scatter") {
    const raster = renderRatioScatter(spec, [curves[0], curves[1]]);
    return encodePng(raster.width, raster.height, raster.data);
  }
  const raster = renderProfileDecay(spec, curves, threshold);
  return encodePng(raster.width, raster.height, raster.data);
}

export function outputPath(spec: FigureSpec, baseDir: string): string {
  return resolveAgainst(baseDir, spec.output);
}
