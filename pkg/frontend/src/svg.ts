/**
 * Deterministic SVG assembly: pure string building, fixed attribute order,
 * fixed coordinate precision.  Rendering the same inputs twice yields
 * byte-identical documents.
 */

import { Scale, formatTick, linearScale, ticks } from "./scale.js";

export const FONT = "font-family=\"Helvetica, Arial, sans-serif\"";

export function fmt(value: number): string {
  if (!Number.isFinite(value)) {
    throw new Error(`non-finite coordinate ${value}`);
  }
  return String(Number(value.toFixed(3)));
}

export function el(
  tag: string,
  attrs: Record<string, string | number>,
  content = "",
): string {
  const parts = Object.entries(attrs).map(
    ([key, value]) => `${key}="${typeof value === "number" ? fmt(value) : value}"`,
  );
  const open = parts.length ? `<${tag} ${parts.join(" ")}` : `<${tag}`;
  return content === "" ? `${open}/>` : `${open}>${content}</${tag}>`;
}

export function escapeText(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function textEl(
  x: number,
  y: number,
  content: string,
  anchor: "start" | "middle" | "end" = "middle",
  size = 11,
  extra: Record<string, string | number> = {},
): string {
  return el(
    "text",
    { x, y, "text-anchor": anchor, "font-size": size, ...extra },
    escapeText(content),
  );
}

export function polylinePath(xs: number[], ys: number[]): string {
  const segments: string[] = [];
  let pen = false;
  for (let i = 0; i < xs.length; i++) {
    if (!Number.isFinite(xs[i]) || !Number.isFinite(ys[i])) {
      pen = false; // gaps where data is missing or sentinel
      continue;
    }
    segments.push(`${pen ? "L" : "M"}${fmt(xs[i])},${fmt(ys[i])}`);
    pen = true;
  }
  return segments.join("");
}

export interface Series {
  x: number[];
  y: number[];
  color: string;
  label?: string;
  dash?: string;
}

export interface PanelBox {
  x: number;
  y: number;
  width: number;
  height: number;
}

export interface PanelOptions {
  box: PanelBox;
  series: Series[];
  xLabel: string;
  yLabel: string;
  title?: string;
  markerX?: number; // vertical dashed guide, e.g. the bare level position
  legend?: boolean;
}

const MARGIN = { left: 58, right: 12, top: 26, bottom: 40 };

export function panelFrame(
  box: PanelBox,
  xScale: Scale,
  yScale: Scale,
  xLabel: string,
  yLabel: string,
  title?: string,
): string {
  const inner: string[] = [];
  const left = box.x + MARGIN.left;
  const right = box.x + box.width - MARGIN.right;
  const top = box.y + MARGIN.top;
  const bottom = box.y + box.height - MARGIN.bottom;
  inner.push(
    el("rect", {
      x: left,
      y: top,
      width: right - left,
      height: bottom - top,
      fill: "none",
      stroke: "#444444",
      "stroke-width": 1,
    }),
  );
  for (const tick of ticks(xScale.domain)) {
    const px = xScale.map(tick);
    inner.push(
      el("line", { x1: px, y1: bottom, x2: px, y2: bottom + 4, stroke: "#444444" }),
    );
    inner.push(textEl(px, bottom + 16, formatTick(tick), "middle", 10));
  }
  for (const tick of ticks(yScale.domain)) {
    const py = yScale.map(tick);
    inner.push(el("line", { x1: left - 4, y1: py, x2: left, y2: py, stroke: "#444444" }));
    inner.push(textEl(left - 7, py + 3, formatTick(tick), "end", 10));
  }
  inner.push(textEl((left + right) / 2, bottom + 32, xLabel, "middle", 12));
  inner.push(
    textEl(box.x + 14, (top + bottom) / 2, yLabel, "middle", 12, {
      transform: `rotate(-90 ${fmt(box.x + 14)} ${fmt((top + bottom) / 2)})`,
    }),
  );
  if (title) {
    inner.push(textEl((left + right) / 2, box.y + 14, title, "middle", 12));
  }
  return inner.join("");
}

export function plotArea(box: PanelBox): { x: [number, number]; y: [number, number] } {
  return {
    x: [box.x + MARGIN.left, box.x + box.width - MARGIN.right],
    y: [box.y + box.height - MARGIN.bottom, box.y + MARGIN.top], // y flipped
  };
}

export function linePanel(options: PanelOptions): string {
  const { box, series } = options;
  const area = plotArea(box);
  const xValues = series.flatMap((s) => s.x);
  const yValues = series.flatMap((s) => s.y);
  if (options.markerX !== undefined) xValues.push(options.markerX);
  const xScale = linearFromData(xValues, area.x);
  const yScale = linearFromData(yValues, area.y, 0.08);
  const parts: string[] = [];
  parts.push(
    panelFrame(box, xScale, yScale, options.xLabel, options.yLabel, options.title),
  );
  if (options.markerX !== undefined) {
    const px = xScale.map(options.markerX);
    parts.push(
      el("line", {
        x1: px,
        y1: area.y[0],
        x2: px,
        y2: area.y[1],
        stroke: "#555555",
        "stroke-dasharray": "4,3",
        "stroke-width": 1,
      }),
    );
  }
  for (const s of series) {
    const attrs: Record<string, string | number> = {
      d: polylinePath(s.x.map(xScale.map), s.y.map(yScale.map)),
      fill: "none",
      stroke: s.color,
      "stroke-width": 1.5,
    };
    if (s.dash) attrs["stroke-dasharray"] = s.dash;
    parts.push(el("path", attrs));
  }
  if (options.legend !== false) {
    parts.push(legend(box, series));
  }
  return parts.join("");
}

function legend(box: PanelBox, series: Series[]): string {
  const labeled = series.filter((s) => s.label);
  if (labeled.length === 0) return "";
  const x0 = box.x + box.width - MARGIN.right - 110;
  let y = box.y + MARGIN.top + 12;
  const parts: string[] = [];
  for (const s of labeled) {
    const attrs: Record<string, string | number> = {
      x1: x0,
      y1: y - 3,
      x2: x0 + 22,
      y2: y - 3,
      stroke: s.color,
      "stroke-width": 1.5,
    };
    if (s.dash) attrs["stroke-dasharray"] = s.dash;
    parts.push(el("line", attrs));
    parts.push(textEl(x0 + 27, y, s.label ?? "", "start", 10));
    y += 14;
  }
  return parts.join("");
}

function linearFromData(
  values: number[],
  range: [number, number],
  padFraction = 0.05,
): Scale {
  const finite = values.filter((v) => Number.isFinite(v));
  if (finite.length === 0) {
    throw new Error("no finite data to scale");
  }
  let lo = Math.min(...finite);
  let hi = Math.max(...finite);
  if (lo === hi) {
    const pad = lo === 0 ? 1 : Math.abs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  } else {
    const span = hi - lo;
    lo -= padFraction * span;
    hi += padFraction * span;
  }
  return linearScale([lo, hi], range);
}

/** Shared sequential colormap (dark blue to yellow) for heat maps. */
const COLOR_STOPS: [number, [number, number, number]][] = [
  [0.0, [68, 1, 84]],
  [0.25, [59, 82, 139]],
  [0.5, [33, 145, 140]],
  [0.75, [94, 201, 98]],
  [1.0, [253, 231, 37]],
];

export function colormap(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  for (let i = 1; i < COLOR_STOPS.length; i++) {
    const [t1, c1] = COLOR_STOPS[i];
    const [t0, c0] = COLOR_STOPS[i - 1];
    if (clamped <= t1) {
      const f = (clamped - t0) / (t1 - t0);
      const rgb = c0.map((a, k) => Math.round(a + f * (c1[k] - a)));
      return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
    }
  }
  const last = COLOR_STOPS[COLOR_STOPS.length - 1][1];
  return `rgb(${last[0]},${last[1]},${last[2]})`;
}

export interface HeatPanelOptions {
  box: PanelBox;
  xCenters: number[]; // ascending cell centers
  yCenters: number[];
  values: number[][]; // values[iy][ix]
  xLabel: string;
  yLabel: string;
  title?: string;
}

export function heatPanel(options: HeatPanelOptions): string {
  const { box, xCenters, yCenters, values } = options;
  const area = plotArea(box);
  const colorbarWidth = 46;
  const xScale = linearFromData(xCenters, [area.x[0], area.x[1] - colorbarWidth], 0.0);
  const yScale = linearFromData(yCenters, area.y, 0.0);
  const flat = values.flat().filter((v) => Number.isFinite(v));
  if (flat.length === 0) throw new Error("heat map has no finite values");
  const vmin = Math.min(...flat);
  const vmax = Math.max(...flat);
  const span = vmax > vmin ? vmax - vmin : 1;
  const parts: string[] = [];
  const cellW =
    xCenters.length > 1
      ? Math.abs(xScale.map(xCenters[1]) - xScale.map(xCenters[0]))
      : (area.x[1] - colorbarWidth - area.x[0]);
  const cellH =
    yCenters.length > 1
      ? Math.abs(yScale.map(yCenters[1]) - yScale.map(yCenters[0]))
      : (area.y[0] - area.y[1]);
  for (let iy = 0; iy < yCenters.length; iy++) {
    for (let ix = 0; ix < xCenters.length; ix++) {
      const value = values[iy][ix];
      if (!Number.isFinite(value)) continue;
      parts.push(
        el("rect", {
          x: xScale.map(xCenters[ix]) - cellW / 2,
          y: yScale.map(yCenters[iy]) - cellH / 2,
          width: cellW * 1.02,
          height: cellH * 1.02,
          fill: colormap((value - vmin) / span),
        }),
      );
    }
  }
  const frameScaleX = linearScale(xScale.domain, [area.x[0], area.x[1] - colorbarWidth]);
  parts.push(
    panelFrame(
      { ...box, width: box.width - colorbarWidth },
      frameScaleX,
      yScale,
      options.xLabel,
      options.yLabel,
      options.title,
    ),
  );
  // colorbar
  const barX = area.x[1] - colorbarWidth + 16;
  const barTop = area.y[1];
  const barBottom = area.y[0];
  const steps = 24;
  for (let i = 0; i < steps; i++) {
    const y1 = barBottom + ((barTop - barBottom) * (i + 1)) / steps;
    const y0 = barBottom + ((barTop - barBottom) * i) / steps;
    parts.push(
      el("rect", {
        x: barX,
        y: Math.min(y0, y1),
        width: 10,
        height: Math.abs(y1 - y0) + 0.5,
        fill: colormap(i / (steps - 1)),
      }),
    );
  }
  parts.push(textEl(barX + 14, barBottom + 3, formatTick(vmin), "start", 9));
  parts.push(textEl(barX + 14, barTop + 3, formatTick(vmax), "start", 9));
  return parts.join("");
}

export function svgDocument(width: number, height: number, content: string): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
    `viewBox="0 0 ${width} ${height}" ${FONT}>` +
    el("rect", { x: 0, y: 0, width, height, fill: "#ffffff" }) +
    content +
    "</svg>\n"
  );
}
