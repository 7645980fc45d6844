#!/usr/bin/env node
import { readFileSync, writeFileSync } from "node:fs";
import { realpathSync } from "node:fs";
import { dirname, resolve } from "node:path";
import { pathToFileURL } from "node:url";

import { outputPath, renderSpec } from "./render.js";
import { parseFigureSpecs } from "./spec.js";

const USAGE = "usage: plots <spec.json>\n  spec: one figure object or an array of them";

export interface CliIo {
  out(line: string): void;
  err(line: string): void;
}

const STDIO: CliIo = {
  out: (line) => process.stdout.write(line + "\n"),
  err: (line) => process.stderr.write(line + "\n"),
};

/** Exit codes: 0 figures written, 1 bad inputs, 2 bad invocation. */
export function runCli(argv: string[], io: CliIo = STDIO): number {
  if (argv.length !== 1 || argv[0] === "-h" || argv[0] === "--help") {
    io.err(USAGE);
    return argv.length === 1 ? 0 : 2;
  }
  const specPath = resolve(argv[0]);
  let text: string;
  try {
    text = readFileSync(specPath, "utf8");
  } catch (err) {
    io.err(`error: cannot read spec: ${(err as Error).message}`);
    return 2;
  }
  try {
    const specs = parseFigureSpecs(text, argv[0]);
    const baseDir = dirname(specPath);
    for (const spec of specs) {
      const png = renderSpec(spec, baseDir);
      const out = outputPath(spec, baseDir);
      writeFileSync(out, png);
      io.out(`wrote ${out} (${png.length} bytes)`);
    }
    return 0;
  } catch (err) {
    const e = err as Error;
    io.err(`error: ${e.name}: ${e.message}`);
    return 1;
  }
}

function isMain(): boolean {
  if (!process.argv[1]) return false;
  try {
    return import.meta.url === pathToFileURL(realpathSync(process.argv[1])).href;
  } catch {
    return false;
  }
}

if (isMain()) {
  process.exit(runCli(process.argv.slice(2)));
}
