import { describe, expect, it } from "vitest";

import { parseFigureSpecs, SchemaMismatch } from "../src/index.js";

const MINIMAL = {
  kind: "profile-decay",
  inputs: ["a.csv"],
  output: "a.png",
};

function spec(overrides: Record<string, unknown>): string {
  return JSON.stringify({ ...MINIMAL, ...overrides });
}

describe("parseFigureSpecs", () => {
  it("fills defaults for a minimal decay figure", () => {
    const [fig] = parseFigureSpecs(spec({}));
    expect(fig.kind).toBe("profile-decay");
    expect(fig.axes).toEqual({ x: "log", y: "linear" });
    expect(fig.width).toBe(720);
    expect(fig.height).toBe(440);
    expect(fig.report).toBeUndefined();
  });

  it("defaults heatmaps to a log height axis", () => {
    const [fig] = parseFigureSpecs(spec({ kind: "field-heatmap", inputs: ["f.csv"] }));
    expect(fig.axes).toEqual({ x: "linear", y: "log" });
  });

  it("accepts an array of figures and labels failures by index", () => {
    const two = JSON.stringify([JSON.parse(spec({})), JSON.parse(spec({ output: "b.png" }))]);
    expect(parseFigureSpecs(two)).toHaveLength(2);
    const broken = JSON.stringify([JSON.parse(spec({})), { kind: "wat" }]);
    expect(() => parseFigureSpecs(broken, "s")).toThrow(/s\[1\]/);
  });

  it("rejects unknown keys", () => {
    expect(() => parseFigureSpecs(spec({ colour: "red" }))).toThrow(/unknown key 'colour'/);
  });

  it("rejects bad kinds, inputs and outputs", () => {
    expect(() => parseFigureSpecs(spec({ kind: "pie" }))).toThrow(SchemaMismatch);
    expect(() => parseFigureSpecs(spec({ inputs: [] }))).toThrow(/non-empty array/);
    expect(() => parseFigureSpecs(spec({ inputs: [3] }))).toThrow(/non-empty array/);
    expect(() => parseFigureSpecs(spec({ output: "a.svg" }))).toThrow(/\.png/);
  });

  it("enforces input counts per kind", () => {
    expect(() => parseFigureSpecs(spec({ kind: "field-heatmap", inputs: ["a.csv", "b.csv"] }))).toThrow(
      /exactly one input/,
    );
    expect(() => parseFigureSpecs(spec({ kind: "ratio-scatter", inputs: ["a.csv"] }))).toThrow(
      /exactly two inputs/,
    );
  });

  it("requires a report before a threshold can be named", () => {
    expect(() => parseFigureSpecs(spec({ threshold: "plateau_floor" }))).toThrow(/needs a 'report'/);
    const [fig] = parseFigureSpecs(spec({ report: "r.json", threshold: "plateau_floor" }));
    expect(fig.threshold).toBe("plateau_floor");
  });

  it("validates axes and dimensions", () => {
    expect(() => parseFigureSpecs(spec({ axes: { x: "cubic" } }))).toThrow(/'log' or 'linear'/);
    expect(() => parseFigureSpecs(spec({ axes: { z: "log" } }))).toThrow(/unknown axes key/);
    expect(() => parseFigureSpecs(spec({ width: 10 }))).toThrow(/\[160, 4096\]/);
    expect(() => parseFigureSpecs(spec({ height: 300.5 }))).toThrow(SchemaMismatch);
    const [fig] = parseFigureSpecs(spec({ axes: { y: "log" }, width: 400 }));
    expect(fig.axes).toEqual({ x: "log", y: "log" });
    expect(fig.width).toBe(400);
  });

  it("rejects empty arrays and broken JSON", () => {
    expect(() => parseFigureSpecs("[]")).toThrow(/empty/);
    expect(() => parseFigureSpecs("{nope")).toThrow(/not valid JSON/);
  });
});
