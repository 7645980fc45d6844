export { SchemaMismatch } from "./errors.js";
export { PROFILE_HEADER, FIELD_HEADER, parseProfileCsv, parseFieldCsv } from "./csv.js";
export type { Profile, Field, FieldPoint } from "./csv.js";
export { parseReport, thresholdFrom } from "./report.js";
export type { Report } from "./report.js";
export { parseFigureSpec, parseFigureSpecs } from "./spec.js";
export type { FigureSpec, FigureKind, AxisScale, Axes } from "./spec.js";
export { encodePng, SOFTWARE_TAG } from "./png.js";
export { Raster } from "./raster.js";
export type { RGB } from "./raster.js";
export {
  PALETTE,
  THRESHOLD_COLOR,
  heatColor,
  renderProfileDecay,
  renderFieldHeatmap,
  renderRatioScatter,
} from "./plots.js";
export type { NamedProfile, ThresholdLine } from "./plots.js";
export { renderSpec, outputPath } from "./render.js";
export { runCli } from "./cli.js";
