/**
 * The seven figure renderers.  Each consumes parsed CSV tables conforming to
 * the simulator's output schemas and returns a complete SVG document string.
 */

import {
  SchemaError,
  Table,
  distinct,
  indicesWhere,
  numericColumn,
  parseCsv,
  pick,
  requireColumns,
} from "./csv.js";
import { FigureSpec } from "./spec.js";
import { HeatPanelOptions, Series, heatPanel, linePanel, svgDocument, textEl } from "./svg.js";

const PANEL_W = 430;
const PANEL_H = 300;

// caption conventions: blue for the in-band level, warm for out-of-band
const IN_BAND = "#1f77b4";
const OUT_BAND = "#d62728";
const OUT_BAND_SOFT = "#ff7f0e";
const CYCLE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

const SWEEP_COLUMNS = ["tau", "eta", "mu", "omega0", "c_se", "j_q", "sigma_rate"];

function levelColor(omega0: number, index: number, soft = false): string {
  if (index === 0) return IN_BAND;
  return soft ? OUT_BAND_SOFT : OUT_BAND;
}

function requireRows(table: Table, context: string): void {
  if (table.rows.length === 0) {
    throw new SchemaError(`${context}: no data rows`);
  }
}

function title(parts: string[], spec: FigureSpec, width: number): void {
  if (spec.title) {
    parts.unshift(textEl(width / 2, 16, spec.title, "middle", 14));
  }
}

/** Endpoint baselines: heat current and entropy rate against the interval. */
export function renderBaseline(spec: FigureSpec, tables: Table[]): string {
  const table = tables[0];
  requireColumns(table, SWEEP_COLUMNS, "baseline");
  requireRows(table, "baseline");
  const tau = numericColumn(table, "tau");
  const eta = numericColumn(table, "eta");
  const omega0 = numericColumn(table, "omega0");
  const jq = numericColumn(table, "j_q");
  const sigmaRate = numericColumn(table, "sigma_rate");
  const levels = distinct(omega0);
  const makeSeries = (values: number[]): Series[] => {
    const out: Series[] = [];
    levels.forEach((level, levelIndex) => {
      for (const [etaValue, dash] of [
        [0.0, undefined],
        [1.0, "5,3"],
      ] as [number, string | undefined][]) {
        const idx = indicesWhere(omega0, level).filter((i) => eta[i] === etaValue);
        if (idx.length === 0) continue;
        const order = [...idx].sort((a, b) => tau[a] - tau[b]);
        out.push({
          x: pick(tau, order),
          y: pick(values, order),
          color: levelColor(level, levelIndex),
          dash,
          label: `level ${level}, ${etaValue === 0 ? "erase" : "keep"}`,
        });
      }
    });
    return out;
  };
  const parts = [
    linePanel({
      box: { x: 0, y: 24, width: PANEL_W, height: PANEL_H },
      series: makeSeries(jq),
      xLabel: "cycle duration",
      yLabel: "heat current",
    }),
    linePanel({
      box: { x: 0, y: 24 + PANEL_H, width: PANEL_W, height: PANEL_H },
      series: makeSeries(sigmaRate),
      xLabel: "cycle duration",
      yLabel: "entropy rate",
    }),
  ];
  title(parts, spec, PANEL_W);
  return svgDocument(PANEL_W, 24 + 2 * PANEL_H, parts.join(""));
}

/** Retained-coherence spectra: one curve per input file. */
export function renderSpectrum(spec: FigureSpec, tables: Table[]): string {
  const series: Series[] = [];
  tables.forEach((table, i) => {
    requireColumns(table, ["omega_k", "s_c"], "spectrum");
    requireRows(table, "spectrum");
    series.push({
      x: numericColumn(table, "omega_k"),
      y: numericColumn(table, "s_c"),
      color: CYCLE[i % CYCLE.length],
      label: spec.labels?.[i],
    });
  });
  const parts = [
    linePanel({
      box: { x: 0, y: 24, width: PANEL_W, height: PANEL_H },
      series,
      xLabel: "mode frequency",
      yLabel: "coherence weight",
      markerX: spec.marker,
    }),
  ];
  title(parts, spec, PANEL_W);
  return svgDocument(PANEL_W, 24 + PANEL_H, parts.join(""));
}

/** Fixed-interval line cuts: coherence and heat current against retention. */
export function renderLinecut(spec: FigureSpec, tables: Table[]): string {
  const table = tables[0];
  requireColumns(table, SWEEP_COLUMNS, "linecut");
  requireRows(table, "linecut");
  const eta = numericColumn(table, "eta");
  const omega0 = numericColumn(table, "omega0");
  const cse = numericColumn(table, "c_se");
  const jq = numericColumn(table, "j_q");
  const levels = distinct(omega0);
  const seriesOf = (values: number[]): Series[] =>
    levels.map((level, i) => {
      const idx = indicesWhere(omega0, level).sort((a, b) => eta[a] - eta[b]);
      return {
        x: pick(eta, idx),
        y: pick(values, idx),
        color: levelColor(level, i, true),
        label: `level ${level}`,
      };
    });
  const parts = [
    linePanel({
      box: { x: 0, y: 24, width: PANEL_W, height: PANEL_H },
      series: seriesOf(cse),
      xLabel: "retention",
      yLabel: "retained coherence",
    }),
    linePanel({
      box: { x: PANEL_W, y: 24, width: PANEL_W, height: PANEL_H },
      series: seriesOf(jq),
      xLabel: "retention",
      yLabel: "heat current",
    }),
  ];
  title(parts, spec, 2 * PANEL_W);
  return svgDocument(2 * PANEL_W, 24 + PANEL_H, parts.join(""));
}

/** Heat maps over the (interval, retention) plane, one row per level. */
export function renderHeatmap(spec: FigureSpec, tables: Table[]): string {
  const table = tables[0];
  const values = spec.values ?? ["c_se", "j_q"];
  requireColumns(table, ["tau", "eta", "omega0", ...values], "heatmap");
  requireRows(table, "heatmap");
  const tau = numericColumn(table, "tau");
  const eta = numericColumn(table, "eta");
  const omega0 = numericColumn(table, "omega0");
  const levels = distinct(omega0);
  const parts: string[] = [];
  levels.forEach((level, row) => {
    const levelIdx = indicesWhere(omega0, level);
    const tauCenters = distinct(pick(tau, levelIdx)).sort((a, b) => a - b);
    const etaCenters = distinct(pick(eta, levelIdx)).sort((a, b) => a - b);
    values.forEach((name, col) => {
      const data = numericColumn(table, name);
      const grid: number[][] = etaCenters.map(() => tauCenters.map(() => NaN));
      for (const i of levelIdx) {
        const iy = etaCenters.indexOf(eta[i]);
        const ix = tauCenters.indexOf(tau[i]);
        grid[iy][ix] = data[i];
      }
      const options: HeatPanelOptions = {
        box: {
          x: col * PANEL_W,
          y: 24 + row * PANEL_H,
          width: PANEL_W,
          height: PANEL_H,
        },
        xCenters: tauCenters,
        yCenters: etaCenters,
        values: grid,
        xLabel: "cycle duration",
        yLabel: "retention",
        title: `${name}, level ${level}`,
      };
      parts.push(heatPanel(options));
    });
  });
  title(parts, spec, values.length * PANEL_W);
  return svgDocument(
    values.length * PANEL_W,
    24 + levels.length * PANEL_H,
    parts.join(""),
  );
}

/** Pareto arches: coherence against heat current, one curve per interval. */
export function renderPareto(spec: FigureSpec, tables: Table[]): string {
  const table = tables[0];
  requireColumns(table, SWEEP_COLUMNS, "pareto");
  requireRows(table, "pareto");
  const tau = numericColumn(table, "tau");
  const eta = numericColumn(table, "eta");
  const omega0 = numericColumn(table, "omega0");
  const cse = numericColumn(table, "c_se");
  const jq = numericColumn(table, "j_q");
  const levels = distinct(omega0);
  const parts: string[] = [];
  levels.forEach((level, row) => {
    const levelIdx = indicesWhere(omega0, level);
    const taus = distinct(pick(tau, levelIdx)).sort((a, b) => a - b);
    const series: Series[] = taus.map((tauValue, i) => {
      const idx = levelIdx
        .filter((k) => tau[k] === tauValue)
        .sort((a, b) => eta[a] - eta[b]);
      return {
        x: pick(cse, idx),
        y: pick(jq, idx),
        color: CYCLE[i % CYCLE.length],
        label: `interval ${tauValue}`,
      };
    });
    parts.push(
      linePanel({
        box: { x: 0, y: 24 + row * PANEL_H, width: PANEL_W, height: PANEL_H },
        series,
        xLabel: "retained coherence",
        yLabel: "heat current",
        title: `level ${level}`,
      }),
    );
  });
  title(parts, spec, PANEL_W);
  return svgDocument(PANEL_W, 24 + levels.length * PANEL_H, parts.join(""));
}

/** Filling-bias sweeps: observables against the chemical potential. */
export function renderMusweep(spec: FigureSpec, tables: Table[]): string {
  const table = tables[0];
  requireColumns(table, SWEEP_COLUMNS, "musweep");
  requireRows(table, "musweep");
  const mu = numericColumn(table, "mu");
  const eta = numericColumn(table, "eta");
  const omega0 = numericColumn(table, "omega0");
  const cse = numericColumn(table, "c_se");
  const jq = numericColumn(table, "j_q");
  const levels = distinct(omega0);
  const parts: string[] = [];
  const observables: [string, number[]][] = [
    ["retained coherence", cse],
    ["heat current", jq],
  ];
  levels.forEach((level, row) => {
    const levelIdx = indicesWhere(omega0, level);
    const etas = distinct(pick(eta, levelIdx)).sort((a, b) => a - b);
    observables.forEach(([label, data], col) => {
      const series: Series[] = etas.map((etaValue, i) => {
        const idx = levelIdx
          .filter((k) => eta[k] === etaValue)
          .sort((a, b) => mu[a] - mu[b]);
        return {
          x: pick(mu, idx),
          y: pick(data, idx),
          color: CYCLE[i % CYCLE.length],
          label: `retention ${etaValue}`,
        };
      });
      parts.push(
        linePanel({
          box: {
            x: col * PANEL_W,
            y: 24 + row * PANEL_H,
            width: PANEL_W,
            height: PANEL_H,
          },
          series,
          xLabel: "chemical potential",
          yLabel: label,
          title: `level ${level}`,
          legend: row === 0 && col === 0,
        }),
      );
    });
  });
  title(parts, spec, 2 * PANEL_W);
  return svgDocument(2 * PANEL_W, 24 + levels.length * PANEL_H, parts.join(""));
}

/** Operating-point curves: maximizers (top) and maxima (bottom) per input. */
export function renderOpcurves(spec: FigureSpec, tables: Table[]): string {
  const parts: string[] = [];
  const columnsNeeded = [
    "tau",
    "eta_max_jq",
    "jq_max",
    "eta_max_cse",
    "cse_max",
    "eta_max_r",
    "r_max",
  ];
  tables.forEach((table, col) => {
    requireColumns(table, columnsNeeded, "opcurves");
    requireRows(table, "opcurves");
    const tau = numericColumn(table, "tau");
    const order = tau.map((_, i) => i).sort((a, b) => tau[a] - tau[b]);
    const sortedTau = pick(tau, order);
    const maximizers: Series[] = (
      [
        ["eta_max_jq", "heat", CYCLE[0]],
        ["eta_max_cse", "coherence", CYCLE[1]],
        ["eta_max_r", "efficiency", CYCLE[2]],
      ] as [string, string, string][]
    ).map(([name, label, color]) => ({
      x: sortedTau,
      y: pick(numericColumn(table, name), order),
      color,
      label,
    }));
    // maxima span orders of magnitude across figures of merit; normalize
    // each curve to its own peak so the drift stays readable
    const maxima: Series[] = (
      [
        ["jq_max", "heat", CYCLE[0]],
        ["cse_max", "coherence", CYCLE[1]],
        ["r_max", "efficiency", CYCLE[2]],
      ] as [string, string, string][]
    ).map(([name, label, color]) => {
      const raw = pick(numericColumn(table, name), order);
      const peak = Math.max(...raw.filter((v) => Number.isFinite(v)).map(Math.abs), 1e-300);
      return { x: sortedTau, y: raw.map((v) => v / peak), color, label };
    });
    const heading = spec.labels?.[col] ?? `input ${col + 1}`;
    parts.push(
      linePanel({
        box: { x: col * PANEL_W, y: 24, width: PANEL_W, height: PANEL_H },
        series: maximizers,
        xLabel: "cycle duration",
        yLabel: "maximizing retention",
        title: heading,
        legend: col === 0,
      }),
    );
    parts.push(
      linePanel({
        box: { x: col * PANEL_W, y: 24 + PANEL_H, width: PANEL_W, height: PANEL_H },
        series: maxima,
        xLabel: "cycle duration",
        yLabel: "peak value (normalized)",
        legend: false,
      }),
    );
  });
  title(parts, spec, tables.length * PANEL_W);
  return svgDocument(tables.length * PANEL_W, 24 + 2 * PANEL_H, parts.join(""));
}

const RENDERERS: Record<string, (spec: FigureSpec, tables: Table[]) => string> = {
  baseline: renderBaseline,
  spectrum: renderSpectrum,
  linecut: renderLinecut,
  heatmap: renderHeatmap,
  pareto: renderPareto,
  musweep: renderMusweep,
  opcurves: renderOpcurves,
};

export function renderFigure(spec: FigureSpec, csvTexts: string[]): string {
  const tables = csvTexts.map(parseCsv);
  const renderer = RENDERERS[spec.kind];
  if (!renderer) {
    throw new SchemaError(`no renderer for kind "${spec.kind}"`);
  }
  return renderer(spec, tables);
}
