import { describe, expect, it } from "vitest";

import { SpecError, parseSpec } from "../src/spec.js";

describe("parseSpec", () => {
  it("parses a full spec", () => {
    const spec = parseSpec(
      [
        "# comment",
        "kind = spectrum",
        "input = a.csv, b.csv",
        "output = fig.svg",
        "labels = one, two",
        "marker = 0.8",
        "title = Spectra",
      ].join("\n"),
    );
    expect(spec.kind).toBe("spectrum");
    expect(spec.inputs).toEqual(["a.csv", "b.csv"]);
    expect(spec.output).toBe("fig.svg");
    expect(spec.labels).toEqual(["one", "two"]);
    expect(spec.marker).toBe(0.8);
    expect(spec.title).toBe("Spectra");
  });

  it("requires kind, input and output", () => {
    expect(() => parseSpec("input = a.csv\noutput = o.svg")).toThrow(/kind/);
    expect(() => parseSpec("kind = pareto\noutput = o.svg")).toThrow(/input/);
    expect(() => parseSpec("kind = pareto\ninput = a.csv")).toThrow(/output/);
  });

  it("rejects unknown kinds and keys with context", () => {
    expect(() =>
      parseSpec("kind = scatter\ninput = a.csv\noutput = o.svg"),
    ).toThrow(/unknown figure kind/);
    expect(() => parseSpec("kine = pareto")).toThrow(/line 1: unknown key/);
  });

  it("rejects malformed values", () => {
    expect(() =>
      parseSpec("kind = spectrum\ninput = a.csv\noutput = o.svg\nmarker = big"),
    ).toThrow(SpecError);
    expect(() => parseSpec("kind =")).toThrow(/empty value/);
  });

  it("splits value lists for heat maps", () => {
    const spec = parseSpec(
      "kind = heatmap\ninput = m.csv\noutput = m.svg\nvalue = c_se, j_q",
    );
    expect(spec.values).toEqual(["c_se", "j_q"]);
  });
});
