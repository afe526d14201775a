import { createHash } from "node:crypto";
import { existsSync, mkdtempSync, readFileSync, readdirSync } from "node:fs";
import { tmpdir } from "node:os";
import { cpSync, rmSync } from "node:fs";
import { join } from "node:path";

import { afterAll, describe, expect, it } from "vitest";

import { parseCsv } from "../src/csv.js";
import { renderFigure } from "../src/figures.js";
import { parseSpec } from "../src/spec.js";
import { renderSpecFile } from "../src/render.js";

const GOLDEN = join(__dirname, "..", "golden");
const SPECS = [
  "fig1.spec",
  "fig2_om0.8.spec",
  "fig2_om3.0.spec",
  "fig3.spec",
  "fig4.spec",
  "fig5.spec",
  "fig6.spec",
  "fig7.spec",
];

function sha256(path: string): string {
  return createHash("sha256").update(readFileSync(path)).digest("hex");
}

describe("golden renders", () => {
  const workdir = mkdtempSync(join(tmpdir(), "figures-"));
  for (const name of readdirSync(GOLDEN)) {
    if (name.endsWith(".csv") || name.endsWith(".spec")) {
      cpSync(join(GOLDEN, name), join(workdir, name));
    }
  }

  afterAll(() => rmSync(workdir, { recursive: true, force: true }));

  it("renders every figure kind without error", () => {
    const kinds = new Set<string>();
    for (const name of SPECS) {
      const spec = parseSpec(readFileSync(join(workdir, name), "utf-8"));
      kinds.add(spec.kind);
      const outPath = renderSpecFile(join(workdir, name));
      expect(existsSync(outPath)).toBe(true);
      const svg = readFileSync(outPath, "utf-8");
      expect(svg.startsWith("<svg ")).toBe(true);
      expect(svg).toContain("</svg>");
      expect(svg).not.toContain("NaN");
    }
    expect([...kinds].sort()).toEqual([
      "baseline",
      "heatmap",
      "linecut",
      "musweep",
      "opcurves",
      "pareto",
      "spectrum",
    ]);
  });

  it("re-renders byte-identically", () => {
    for (const name of SPECS) {
      const outPath = renderSpecFile(join(workdir, name));
      const first = readFileSync(outPath);
      renderSpecFile(join(workdir, name));
      const second = readFileSync(outPath);
      expect(second.equals(first)).toBe(true);
    }
  });

  it("leaves input CSVs untouched", () => {
    const before = new Map<string, string>();
    for (const name of readdirSync(workdir)) {
      if (name.endsWith(".csv")) before.set(name, sha256(join(workdir, name)));
    }
    for (const name of SPECS) {
      renderSpecFile(join(workdir, name));
    }
    for (const [name, digest] of before) {
      expect(sha256(join(workdir, name))).toBe(digest);
    }
  });
});

describe("render failure modes", () => {
  it("rejects an empty record set and writes nothing", () => {
    const spec = parseSpec("kind = linecut\ninput = a.csv\noutput = o.svg");
    const headerOnly = [
      "tau,eta,mu,omega0,n_sites,p_star,c_se,q_sup,j_q,sigma_reset,sigma_rate,",
      "r_eff,dn_e,j_gc,rho_spectral,converged",
    ].join("");
    expect(() => renderFigure(spec, [headerOnly + "\n"])).toThrow(/no data rows/);
  });

  it("names the missing column", () => {
    const spec = parseSpec("kind = linecut\ninput = a.csv\noutput = o.svg");
    expect(() => renderFigure(spec, ["tau,eta\n0.2,0.5\n"])).toThrow(
      /missing column "mu"/,
    );
  });

  it("renders a minimal synthetic spectrum", () => {
    const spec = parseSpec(
      "kind = spectrum\ninput = s.csv\noutput = s.svg\nmarker = 0.5",
    );
    const csv =
      "omega_k,g_k_sq,x_re,x_im,s_c,s_c_guide\n-1,0.1,0,0,0.2,0.19\n0,0.1,0,0,0.5,0.52\n1,0.1,0,0,0.1,0.09\n";
    const svg = renderFigure(spec, [csv]);
    expect(svg).toContain("stroke-dasharray"); // the level marker line
    const table = parseCsv(csv);
    expect(table.rows.length).toBe(3);
  });
});
