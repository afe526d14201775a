/**
 * Minimal CSV reading for the simulator's output files.
 *
 * The producer never quotes fields, so splitting on commas is exact.
 * Numeric fields may carry the literal sentinels "inf" and "nan".
 */

export interface Table {
  header: string[];
  rows: string[][];
}

export class SchemaError extends Error {}

export function parseCsv(text: string): Table {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty CSV: no header line");
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((line) => line.split(","));
  for (const row of rows) {
    if (row.length !== header.length) {
      throw new SchemaError(
        `ragged CSV row: expected ${header.length} fields, got ${row.length}`,
      );
    }
  }
  return { header, rows };
}

export function requireColumns(table: Table, columns: string[], context: string): void {
  for (const name of columns) {
    if (!table.header.includes(name)) {
      throw new SchemaError(`${context}: missing column "${name}"`);
    }
  }
}

export function column(table: Table, name: string): string[] {
  const index = table.header.indexOf(name);
  if (index < 0) {
    throw new SchemaError(`missing column "${name}"`);
  }
  return table.rows.map((row) => row[index]);
}

export function parseNumber(token: string): number {
  if (token === "inf") return Infinity;
  if (token === "-inf") return -Infinity;
  if (token === "nan") return NaN;
  const value = Number(token);
  if (Number.isNaN(value) && token !== "nan") {
    throw new SchemaError(`malformed number "${token}"`);
  }
  return value;
}

export function numericColumn(table: Table, name: string): number[] {
  return column(table, name).map(parseNumber);
}

/** Distinct values of a column in first-appearance order. */
export function distinct(values: number[]): number[] {
  const seen = new Set<number>();
  const out: number[] = [];
  for (const v of values) {
    if (!seen.has(v)) {
      seen.add(v);
      out.push(v);
    }
  }
  return out;
}

/** Row indices where the column equals the value exactly. */
export function indicesWhere(values: number[], value: number): number[] {
  const out: number[] = [];
  for (let i = 0; i < values.length; i++) {
    if (values[i] === value) out.push(i);
  }
  return out;
}

export function pick(values: number[], indices: number[]): number[] {
  return indices.map((i) => values[i]);
}
