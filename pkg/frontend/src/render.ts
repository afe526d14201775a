/** File-level rendering: spec in, SVG out, paths resolved beside the spec. */

import { readFileSync, writeFileSync } from "node:fs";
import { dirname, resolve } from "node:path";

import { renderFigure } from "./figures.js";
import { parseSpec } from "./spec.js";

export function renderSpecFile(specPath: string): string {
  const text = readFileSync(specPath, "utf-8");
  const spec = parseSpec(text);
  const base = dirname(resolve(specPath));
  const csvTexts = spec.inputs.map((input) =>
    readFileSync(resolve(base, input), "utf-8"),
  );
  const svg = renderFigure(spec, csvTexts);
  const outPath = resolve(base, spec.output);
  writeFileSync(outPath, svg, "utf-8");
  return outPath;
}
