/**
 * CLI: `render --spec <path>`
 *
 * Reads the spec, loads its input CSVs (paths relative to the spec file),
 * renders the figure and writes the SVG next to the spec.  Exit codes:
 * 0 success, 1 render/schema failure, 2 usage or spec parse error.
 */

import { SchemaError } from "./csv.js";
import { renderSpecFile } from "./render.js";
import { SpecError } from "./spec.js";

function main(argv: string[]): number {
  if (argv[0] !== "render") {
    process.stderr.write("usage: render --spec <path>\n");
    return 2;
  }
  const flagIndex = argv.indexOf("--spec");
  const specPath = flagIndex >= 0 ? argv[flagIndex + 1] : undefined;
  if (!specPath) {
    process.stderr.write("usage: render --spec <path>\n");
    return 2;
  }
  try {
    const outPath = renderSpecFile(specPath);
    process.stderr.write(`wrote ${outPath}\n`);
    return 0;
  } catch (err) {
    if (err instanceof SpecError) {
      process.stderr.write(`spec error: ${(err as Error).message}\n`);
      return 2;
    }
    if (err instanceof SchemaError || err instanceof Error) {
      process.stderr.write(`render error: ${(err as Error).message}\n`);
      return 1;
    }
    throw err;
  }
}

process.exit(main(process.argv.slice(2)));
