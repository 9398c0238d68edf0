import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { afterAll, describe, expect, it } from "vitest";
import { column, loadTable } from "../src/csv.js";
import { DataError } from "../src/errors.js";

const dir = mkdtempSync(join(tmpdir(), "csv-test-"));
afterAll(() => rmSync(dir, { recursive: true, force: true }));

function file(name: string, content: string): string {
  const path = join(dir, name);
  writeFileSync(path, content);
  return path;
}

describe("loadTable", () => {
  it("loads requested numeric columns", () => {
    const path = file("ok.csv", "tau_ps,g2\n0,1.5\n10,0.5\n");
    const table = loadTable(path, ["tau_ps", "g2"]);
    expect(table.rowCount).toBe(2);
    expect(Array.from(column(table, "g2"))).toEqual([1.5, 0.5]);
  });

  it("reports a unit mismatch when only the unit suffix differs", () => {
    const path = file("units.csv", "tau_ns,g2\n0,1\n");
    expect(() => loadTable(path, ["tau_ps", "g2"])).toThrow(DataError);
    expect(() => loadTable(path, ["tau_ps", "g2"])).toThrow(
      /unit mismatch.*requires "tau_ps".*provides "tau_ns"/,
    );
  });

  it("lists the available headers for a plainly missing column", () => {
    const path = file("missing.csv", "tau_ps,g2\n0,1\n");
    expect(() => loadTable(path, ["intensity_gamma"])).toThrow(
      /missing column "intensity_gamma".*found: tau_ps, g2/,
    );
  });

  it("rejects a header-only table", () => {
    const path = file("empty.csv", "tau_ps,g2\n");
    expect(() => loadTable(path, ["tau_ps"])).toThrow(/no data rows/);
  });

  it("rejects a fully empty file", () => {
    const path = file("blank.csv", "");
    expect(() => loadTable(path, ["tau_ps"])).toThrow(DataError);
  });

  it("rejects non-numeric cells unless the column allows gaps", () => {
    const path = file("nan.csv", "tau_ps,g2\n0,nan\n1,0.5\n");
    expect(() => loadTable(path, ["tau_ps", "g2"])).toThrow(/non-numeric/);
    const table = loadTable(path, ["tau_ps", "g2"], { allowNaN: ["g2"] });
    const values = Array.from(column(table, "g2"));
    expect(Number.isNaN(values[0])).toBe(true);
    expect(values[1]).toBe(0.5);
  });

  it("fails on unreadable files", () => {
    expect(() => loadTable(join(dir, "absent.csv"), ["x"])).toThrow(
      /cannot read/,
    );
  });
});

describe("column", () => {
  it("refuses to hand out a column that was never requested", () => {
    const path = file("cols.csv", "a_ps,b_ps\n1,2\n");
    const table = loadTable(path, ["a_ps"]);
    expect(() => column(table, "b_ps")).toThrow(DataError);
  });
});
