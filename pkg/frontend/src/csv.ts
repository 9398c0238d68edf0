/**
 * Strict CSV ingestion for the simulation CLI's output tables.
 *
 * Column names carry their units as suffixes (tau_ps, g2_mean,
 * intensity_gamma, ...).  A recipe therefore asks for columns by the
 * exact unit-bearing name; a header that matches the quantity but not
 * the unit is reported as a unit mismatch rather than a silent rescale.
 */

import { readFileSync } from "node:fs";
import Papa from "papaparse";
import { DataError } from "./errors.js";

export interface Table {
  /** Column values keyed by exact header name. */
  columns: Map<string, Float64Array>;
  rowCount: number;
  file: string;
}

/** Stem of a unit-suffixed header: "tau_ps" -> "tau". */
function stem(header: string): string {
  const idx = header.lastIndexOf("_");
  return idx > 0 ? header.slice(0, idx) : header;
}

export interface LoadOptions {
  /** Columns that may contain nan markers (rendered as gaps). */
  allowNaN?: readonly string[];
}

/**
 * Read a CSV file and validate that every requested column exists and
 * parses as numbers.  Raises DataError on missing files, missing or
 * unit-mismatched headers, non-numeric cells, and empty tables.
 */
export function loadTable(
  file: string,
  required: readonly string[],
  options: LoadOptions = {},
): Table {
  let raw: string;
  try {
    raw = readFileSync(file, "utf-8");
  } catch {
    throw new DataError(`cannot read input table ${file}`);
  }

  const parsed = Papa.parse<string[]>(raw.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    throw new DataError(`${file}: ${parsed.errors[0].message}`);
  }
  const rows = parsed.data;
  if (rows.length === 0) {
    throw new DataError(`${file}: file has no header row`);
  }
  const header = rows[0];
  const body = rows.slice(1);

  for (const name of required) {
    if (header.includes(name)) continue;
    const sibling = header.find((h) => stem(h) === stem(name));
    if (sibling !== undefined) {
      throw new DataError(
        `${file}: unit mismatch for column "${stem(name)}": ` +
          `recipe requires "${name}" but the file provides "${sibling}"`,
      );
    }
    throw new DataError(
      `${file}: missing column "${name}" (found: ${header.join(", ")})`,
    );
  }
  if (body.length === 0) {
    throw new DataError(`${file}: table contains no data rows`);
  }

  const allowNaN = new Set(options.allowNaN ?? []);
  const columns = new Map<string, Float64Array>();
  for (const name of required) {
    const col = header.indexOf(name);
    const values = new Float64Array(body.length);
    for (let i = 0; i < body.length; i += 1) {
      const cell = (body[i][col] ?? "").trim();
      const value = Number(cell);
      if (Number.isNaN(value) && !allowNaN.has(name)) {
        throw new DataError(
          `${file}: non-numeric value "${cell}" in column "${name}" row ${i + 2}`,
        );
      }
      values[i] = value;
    }
    columns.set(name, values);
  }
  return { columns, rowCount: body.length, file };
}

/** Column accessor that encodes the missing-column contract. */
export function column(table: Table, name: string): Float64Array {
  const values = table.columns.get(name);
  if (values === undefined) {
    throw new DataError(`${table.file}: column "${name}" was not loaded`);
  }
  return values;
}
