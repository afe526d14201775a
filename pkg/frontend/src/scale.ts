/** Linear axis scales and tick placement. */

export interface Scale {
  domain: [number, number];
  range: [number, number];
  map(value: number): number;
}

export function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo > hi) {
    throw new Error("extent of empty or non-finite data");
  }
  if (lo === hi) {
    // degenerate span: widen symmetrically so the scale stays invertible
    const pad = lo === 0 ? 1 : Math.abs(lo) * 0.1;
    return [lo - pad, hi + pad];
  }
  return [lo, hi];
}

export function padded(domain: [number, number], fraction = 0.05): [number, number] {
  const span = domain[1] - domain[0];
  return [domain[0] - fraction * span, domain[1] + fraction * span];
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const slope = (r1 - r0) / (d1 - d0);
  return {
    domain,
    range,
    map: (value: number) => r0 + (value - d0) * slope,
  };
}

/** Round tick steps to 1/2/2.5/5 times a power of ten. */
function niceStep(rawStep: number): number {
  const power = Math.floor(Math.log10(rawStep));
  const base = Math.pow(10, power);
  const multiple = rawStep / base;
  let nice: number;
  if (multiple <= 1) nice = 1;
  else if (multiple <= 2) nice = 2;
  else if (multiple <= 2.5) nice = 2.5;
  else if (multiple <= 5) nice = 5;
  else nice = 10;
  return nice * base;
}

export function ticks(domain: [number, number], count = 5): number[] {
  const [lo, hi] = domain;
  if (!(hi > lo)) return [lo];
  const step = niceStep((hi - lo) / Math.max(1, count));
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    // snap away float drift so labels stay clean
    out.push(Number(v.toPrecision(12)));
  }
  return out;
}

export function formatTick(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1e4 || magnitude < 1e-3) {
    return value.toExponential(1);
  }
  return String(Number(value.toPrecision(6)));
}
