import { describe, expect, it } from "vitest";

import { extent, formatTick, linearScale, ticks } from "../src/scale.js";

describe("linearScale", () => {
  it("maps domain endpoints to range endpoints", () => {
    const scale = linearScale([0, 10], [100, 300]);
    expect(scale.map(0)).toBe(100);
    expect(scale.map(10)).toBe(300);
    expect(scale.map(5)).toBe(200);
  });

  it("supports inverted ranges for screen-y axes", () => {
    const scale = linearScale([0, 1], [250, 50]);
    expect(scale.map(0)).toBe(250);
    expect(scale.map(1)).toBe(50);
  });
});

describe("extent", () => {
  it("ignores non-finite values", () => {
    expect(extent([1, NaN, 3, Infinity])).toEqual([1, 3]);
  });

  it("widens degenerate spans", () => {
    const [lo, hi] = extent([2, 2]);
    expect(lo).toBeLessThan(2);
    expect(hi).toBeGreaterThan(2);
  });

  it("throws on empty data", () => {
    expect(() => extent([NaN])).toThrow();
  });
});

describe("ticks", () => {
  it("produces round steps inside the domain", () => {
    const out = ticks([0, 1], 5);
    expect(out[0]).toBeGreaterThanOrEqual(0);
    expect(out[out.length - 1]).toBeLessThanOrEqual(1);
    expect(out).toContain(0.2);
    expect(out).toContain(1);
  });

  it("handles negative domains", () => {
    const out = ticks([-3, 3], 5);
    expect(out).toContain(0);
  });
});

describe("formatTick", () => {
  it("keeps ordinary numbers plain", () => {
    expect(formatTick(0.5)).toBe("0.5");
    expect(formatTick(0)).toBe("0");
  });

  it("switches to exponent notation for extremes", () => {
    expect(formatTick(1.6e-5)).toBe("1.6e-5");
    expect(formatTick(25000)).toBe("2.5e+4");
  });
});
