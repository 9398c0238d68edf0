/**
 * Byte-stability of every figure: rendering the committed fixtures must
 * reproduce the committed SVG exactly, and repeated renders must agree.
 */

import { mkdtempSync, readFileSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterAll, describe, expect, it } from "vitest";
import { FIGURES } from "../src/registry.js";
import { renderFigure } from "../src/render.js";
import { runFigure } from "../src/runner.js";

const root = fileURLToPath(new URL("..", import.meta.url));
const outDir = mkdtempSync(join(tmpdir(), "figures-test-"));
afterAll(() => rmSync(outDir, { recursive: true, force: true }));

describe.each([...FIGURES.keys()])("%s", (name) => {
  const fixtures = join(root, "fixtures", name);
  const golden = join(root, "golden", `${name}.svg`);

  it("reproduces the committed SVG byte for byte", async () => {
    const out = join(outDir, `${name}.svg`);
    const code = await runFigure(name, ["--in", fixtures, "--out", out]);
    expect(code).toBe(0);
    expect(readFileSync(out, "utf-8")).toBe(readFileSync(golden, "utf-8"));
  });

  it("renders identically on repeated calls", () => {
    const builder = FIGURES.get(name)!;
    const first = renderFigure(builder(fixtures), fixtures);
    const second = renderFigure(builder(fixtures), fixtures);
    expect(second).toBe(first);
  });
});
