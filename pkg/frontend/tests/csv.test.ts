import { describe, expect, it } from "vitest";

import {
  SchemaError,
  column,
  distinct,
  numericColumn,
  parseCsv,
  parseNumber,
  requireColumns,
} from "../src/csv.js";

describe("parseCsv", () => {
  it("splits header and rows", () => {
    const table = parseCsv("a,b\n1,2\n3,4\n");
    expect(table.header).toEqual(["a", "b"]);
    expect(table.rows).toEqual([
      ["1", "2"],
      ["3", "4"],
    ]);
  });

  it("rejects empty text", () => {
    expect(() => parseCsv("")).toThrow(SchemaError);
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("a,b\n1\n")).toThrow(/ragged/);
  });
});

describe("columns", () => {
  const table = parseCsv("tau,r_eff\n0.2,inf\n0.5,1.25\n");

  it("extracts by name", () => {
    expect(column(table, "tau")).toEqual(["0.2", "0.5"]);
  });

  it("names the missing column", () => {
    expect(() => column(table, "c_se")).toThrow(/missing column "c_se"/);
    expect(() => requireColumns(table, ["tau", "c_se"], "ctx")).toThrow(
      /ctx: missing column "c_se"/,
    );
  });

  it("parses sentinels", () => {
    expect(numericColumn(table, "r_eff")).toEqual([Infinity, 1.25]);
    expect(parseNumber("nan")).toBeNaN();
    expect(parseNumber("-inf")).toBe(-Infinity);
  });

  it("rejects malformed numbers", () => {
    expect(() => parseNumber("fast")).toThrow(/malformed number/);
  });
});

describe("distinct", () => {
  it("keeps first-appearance order", () => {
    expect(distinct([3, 1, 3, 2, 1])).toEqual([3, 1, 2]);
  });
});
