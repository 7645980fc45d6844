import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import {
  heatColor,
  PALETTE,
  parseFieldCsv,
  parseFigureSpecs,
  parseProfileCsv,
  renderFieldHeatmap,
  renderProfileDecay,
  renderSpec,
  SchemaMismatch,
  THRESHOLD_COLOR,
} from "../src/index.js";
import { decodePng, hasColor, nearestT, pixelAt, softwareTag } from "./util.js";

const FIXTURES = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

function figure(raw: Record<string, unknown>) {
  return parseFigureSpecs(JSON.stringify(raw))[0];
}

// composition-failure artifacts: two factors whose oscillation dies, one
// composite whose oscillation does not
const DECAY_SPEC = {
  kind: "profile-decay",
  inputs: ["composition_failure/h_log_deriv.csv", "composition_failure/composite_plateau.csv"],
  report: "composition_failure/report.json",
  threshold: "plateau_floor",
  output: "composition.png",
};

describe("profile-decay figure", () => {
  it("draws one decay curve, one plateau curve and the report threshold", () => {
    const png = renderSpec(figure(DECAY_SPEC), FIXTURES);
    const img = decodePng(png);
    expect(img.width).toBe(720);
    expect(img.height).toBe(440);
    expect(softwareTag(img)).toBeTruthy();
    expect(hasColor(img, PALETTE[0])).toBe(true);
    expect(hasColor(img, PALETTE[1])).toBe(true);
    expect(hasColor(img, THRESHOLD_COLOR)).toBe(true);

    // plateau curve rides high above the threshold line, decay tail dips low
    let plateauTop = img.height;
    let decayBottom = 0;
    for (let y = 0; y < img.height; y++) {
      for (let x = 0; x < img.width; x++) {
        const c = pixelAt(img, x, y);
        if (c[0] === PALETTE[1][0] && c[1] === PALETTE[1][1] && c[2] === PALETTE[1][2]) {
          plateauTop = Math.min(plateauTop, y);
        }
        if (c[0] === PALETTE[0][0] && c[1] === PALETTE[0][1] && c[2] === PALETTE[0][2]) {
          decayBottom = Math.max(decayBottom, y);
        }
      }
    }
    expect(plateauTop).toBeLessThan(200);
    expect(decayBottom).toBeGreaterThan(350);
  });

  it("regenerates byte-identically", () => {
    const a = renderSpec(figure(DECAY_SPEC), FIXTURES);
    const b = renderSpec(figure(DECAY_SPEC), FIXTURES);
    expect(a.equals(b)).toBe(true);
  });

  it("moves the reference line when a different threshold is named", () => {
    const a = renderSpec(figure(DECAY_SPEC), FIXTURES);
    const b = renderSpec(figure({ ...DECAY_SPEC, threshold: "factor_vmo" }), FIXTURES);
    expect(a.equals(b)).toBe(false);
  });

  it("fails loudly on a missing input path", () => {
    const spec = figure({ ...DECAY_SPEC, inputs: ["composition_failure/absent.csv"] });
    expect(() => renderSpec(spec, FIXTURES)).toThrow(SchemaMismatch);
    expect(() => renderSpec(spec, FIXTURES)).toThrow(/does not exist/);
  });

  it("fails loudly on an unknown threshold name", () => {
    const spec = figure({ ...DECAY_SPEC, threshold: "no_such_gate" });
    expect(() => renderSpec(spec, FIXTURES)).toThrow(/no numeric threshold 'no_such_gate'/);
  });

  it("refuses a log value axis when a profile touches zero", () => {
    const spec = figure({ ...DECAY_SPEC, axes: { x: "log", y: "log" } });
    const flat = parseProfileCsv("scale,value,argmax_center\n1,0,0\n0.5,0,0\n");
    expect(() => renderProfileDecay(spec, [{ name: "flat", profile: flat }])).toThrow(/strictly positive/);
  });
});

function syntheticField(absMu: number): string {
  const lines = ["x,y,re_mu,im_mu,abs_mu"];
  for (const y of [2, 1, 0.5]) {
    for (const x of [-1, 0, 1]) {
      lines.push(`${x},${y},${absMu},0,${absMu}`);
    }
  }
  return lines.join("\n") + "\n";
}

const HEATMAP_SPEC = {
  kind: "field-heatmap",
  inputs: ["ss_uc_smooth_de_field.csv"],
  output: "field.png",
};

// frame geometry for the default 720x440 heatmap: the plot interior
const LEFT = 66;
const RIGHT = 644;
const TOP = 26;
const BOTTOM = 394;

describe("field-heatmap figure", () => {
  it("paints a zero field in one uniform color", () => {
    const spec = figure(HEATMAP_SPEC);
    const raster = renderFieldHeatmap(spec, parseFieldCsv(syntheticField(0)));
    const expected = heatColor(0);
    for (let y = TOP; y <= BOTTOM; y += 23) {
      for (let x = LEFT; x <= RIGHT; x += 34) {
        expect(raster.get(x, y)).toEqual(expected);
      }
    }
  });

  it("paints a constant field in one uniform color", () => {
    const spec = figure(HEATMAP_SPEC);
    const raster = renderFieldHeatmap(spec, parseFieldCsv(syntheticField(1 / 3)));
    const expected = heatColor(1);
    for (let y = TOP; y <= BOTTOM; y += 23) {
      for (let x = LEFT; x <= RIGHT; x += 34) {
        expect(raster.get(x, y)).toEqual(expected);
      }
    }
  });

  it("shows the barycentric field fading as the height drops", () => {
    const png = renderSpec(figure(HEATMAP_SPEC), FIXTURES);
    const img = decodePng(png);
    const cx = Math.round((LEFT + RIGHT) / 2);
    const tTop = nearestT(pixelAt(img, cx, TOP + 14));
    const tBottom = nearestT(pixelAt(img, cx, BOTTOM - 14));
    expect(tTop).toBeGreaterThan(0.4);
    expect(tBottom).toBeLessThan(0.05);
  });

  it("regenerates byte-identically", () => {
    const a = renderSpec(figure(HEATMAP_SPEC), FIXTURES);
    const b = renderSpec(figure(HEATMAP_SPEC), FIXTURES);
    expect(a.equals(b)).toBe(true);
  });

  it("rejects a linear height axis", () => {
    const spec = figure({ ...HEATMAP_SPEC, axes: { y: "linear" } });
    expect(() => renderFieldHeatmap(spec, parseFieldCsv(syntheticField(0)))).toThrow(/log y axis/);
  });
});

describe("ratio-scatter figure", () => {
  const SPEC = {
    kind: "ratio-scatter",
    inputs: ["composition_failure/g_log_deriv.csv", "composition_failure/h_log_deriv.csv"],
    output: "ratio.png",
  };

  it("plots second over first at the shared scales", () => {
    const png = renderSpec(figure(SPEC), FIXTURES);
    const img = decodePng(png);
    expect(hasColor(img, PALETTE[0])).toBe(true);
    expect(hasColor(img, [150, 150, 150])).toBe(true);
    const again = renderSpec(figure(SPEC), FIXTURES);
    expect(png.equals(again)).toBe(true);
  });

  it("fails loudly when the profiles share no scales", () => {
    const spec = figure({
      ...SPEC,
      inputs: ["composition_failure/h_log_deriv.csv", "composition_failure/composite_plateau.csv"],
    });
    expect(() => renderSpec(spec, FIXTURES)).toThrow(/share no scale/);
  });
});

describe("heatColor", () => {
  it("spans the fixed stops", () => {
    expect(heatColor(0)).toEqual([68, 1, 84]);
    expect(heatColor(1)).toEqual([253, 231, 37]);
    expect(heatColor(-1)).toEqual(heatColor(0));
    expect(heatColor(2)).toEqual(heatColor(1));
  });
});

describe("renderSpec io", () => {
  it("resolves relative paths against the base directory", () => {
    const tmp = mkdtempSync(join(tmpdir(), "plots-"));
    writeFileSync(join(tmp, "h.csv"), readFileSync(join(FIXTURES, "composition_failure/h_log_deriv.csv")));
    const spec = figure({ kind: "profile-decay", inputs: ["h.csv"], output: "h.png" });
    const png = renderSpec(spec, tmp);
    expect(decodePng(png).width).toBe(720);
  });
});
