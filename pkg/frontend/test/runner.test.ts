import {
  cpSync,
  existsSync,
  mkdtempSync,
  readFileSync,
  rmSync,
  writeFileSync,
} from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, describe, expect, it } from "vitest";
import { runFigure } from "../src/runner.js";

const root = fileURLToPath(new URL("..", import.meta.url));
const scratch = mkdtempSync(join(tmpdir(), "runner-test-"));
afterAll(() => rmSync(scratch, { recursive: true, force: true }));

describe("runFigure exit codes", () => {
  it("returns 2 for an unknown figure name", async () => {
    const code = await runFigure("no-such-figure", [
      "--in",
      "x",
      "--out",
      "y.svg",
    ]);
    expect(code).toBe(2);
  });

  it("returns 2 when --in or --out is missing", async () => {
    expect(await runFigure("temperature-sweep", ["--in", "x"])).toBe(2);
    expect(await runFigure("temperature-sweep", ["--out", "y.svg"])).toBe(2);
  });

  it("returns 2 for unknown flags", async () => {
    expect(
      await runFigure("temperature-sweep", [
        "--in",
        "x",
        "--out",
        "y.svg",
        "--bogus",
      ]),
    ).toBe(2);
  });

  it("returns 1 when the input directory does not exist", async () => {
    const out = join(scratch, "missing-dir.svg");
    const code = await runFigure("temperature-sweep", [
      "--in",
      join(scratch, "does-not-exist"),
      "--out",
      out,
    ]);
    expect(code).toBe(1);
    expect(existsSync(out)).toBe(false);
  });

  it("returns 1 on an empty data table and writes no image", async () => {
    const inDir = join(scratch, "empty-table");
    cpSync(join(root, "fixtures", "temperature-sweep"), inDir, {
      recursive: true,
    });
    writeFileSync(join(inDir, "h.csv"), "temperature_k,g2_zero_delay\n");
    const out = join(scratch, "empty-table.svg");
    const code = await runFigure("temperature-sweep", [
      "--in",
      inDir,
      "--out",
      out,
    ]);
    expect(code).toBe(1);
    expect(existsSync(out)).toBe(false);
    expect(existsSync(`${out}.partial`)).toBe(false);
  });

  it("returns 1 on a unit-mismatched header and names both units", async () => {
    const inDir = join(scratch, "unit-mismatch");
    cpSync(join(root, "fixtures", "temperature-sweep"), inDir, {
      recursive: true,
    });
    const rows = readFileSync(join(inDir, "h.csv"), "utf-8").split("\n");
    rows[0] = rows[0].replace("temperature_k", "temperature_c");
    writeFileSync(join(inDir, "h.csv"), rows.join("\n"));
    const out = join(scratch, "unit-mismatch.svg");
    const code = await runFigure("temperature-sweep", [
      "--in",
      inDir,
      "--out",
      out,
    ]);
    expect(code).toBe(1);
    expect(existsSync(out)).toBe(false);
  });

  it("returns 0 and writes the image on success", async () => {
    const out = join(scratch, "nested", "ok.svg");
    const code = await runFigure("temperature-sweep", [
      "--in",
      join(root, "fixtures", "temperature-sweep"),
      "--out",
      out,
    ]);
    expect(code).toBe(0);
    expect(readFileSync(out, "utf-8")).toContain("</svg>");
  });
});
