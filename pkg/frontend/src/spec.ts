/**
 * Declarative render specs: flat `key = value` lines with `#` comments.
 *
 * Required keys: kind, input (comma-separated CSV paths), output.
 * Optional keys: title, labels (comma list, one per input), marker (number),
 * value (comma list of sweep columns for heat maps).
 */

export const KINDS = [
  "baseline",
  "spectrum",
  "linecut",
  "heatmap",
  "pareto",
  "musweep",
  "opcurves",
] as const;

export type FigureKind = (typeof KINDS)[number];

export interface FigureSpec {
  kind: FigureKind;
  inputs: string[];
  output: string;
  title?: string;
  labels?: string[];
  marker?: number;
  values?: string[];
}

export class SpecError extends Error {}

export function parseSpec(text: string): FigureSpec {
  const entries = new Map<string, string>();
  const lines = text.split(/\r?\n/);
  for (let i = 0; i < lines.length; i++) {
    const stripped = lines[i].split("#", 1)[0].trim();
    if (!stripped) continue;
    const eq = stripped.indexOf("=");
    if (eq < 0) {
      throw new SpecError(`line ${i + 1}: expected key = value, got "${stripped}"`);
    }
    const key = stripped.slice(0, eq).trim();
    const value = stripped.slice(eq + 1).trim();
    if (!["kind", "input", "output", "title", "labels", "marker", "value"].includes(key)) {
      throw new SpecError(`line ${i + 1}: unknown key "${key}"`);
    }
    if (!value) {
      throw new SpecError(`line ${i + 1}: empty value for "${key}"`);
    }
    entries.set(key, value);
  }
  const kind = entries.get("kind");
  if (!kind) throw new SpecError("missing required key: kind");
  if (!(KINDS as readonly string[]).includes(kind)) {
    throw new SpecError(`unknown figure kind "${kind}" (expected one of ${KINDS.join(", ")})`);
  }
  const input = entries.get("input");
  if (!input) throw new SpecError("missing required key: input");
  const output = entries.get("output");
  if (!output) throw new SpecError("missing required key: output");

  const spec: FigureSpec = {
    kind: kind as FigureKind,
    inputs: input.split(",").map((s) => s.trim()).filter(Boolean),
    output,
  };
  if (entries.has("title")) spec.title = entries.get("title");
  if (entries.has("labels")) {
    spec.labels = entries.get("labels")!.split(",").map((s) => s.trim());
  }
  if (entries.has("marker")) {
    const marker = Number(entries.get("marker"));
    if (Number.isNaN(marker)) {
      throw new SpecError(`malformed marker "${entries.get("marker")}"`);
    }
    spec.marker = marker;
  }
  if (entries.has("value")) {
    spec.values = entries.get("value")!.split(",").map((s) => s.trim());
  }
  return spec;
}
