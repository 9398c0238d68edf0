/**
 * Shared command-line entry: every figure script takes --in DIR --out
 * FILE and returns an exit code.  The SVG is rendered fully in memory
 * and moved into place afterwards, so a failed run never leaves a
 * partial or stale image behind.
 *
 * Exit codes: 0 success, 2 usage problem, 1 bad or missing input data.
 */

import { mkdirSync, renameSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";
import yargs from "yargs";
import { DataError, UsageError } from "./errors.js";
import { FIGURES } from "./registry.js";
import { renderFigure } from "./render.js";

interface CliArgs {
  in: string;
  out: string;
}

async function parseArgs(name: string, argv: readonly string[]): Promise<CliArgs> {
  const parser = yargs(argv as string[])
    .scriptName(name)
    .usage("$0 --in DIR --out FILE")
    .option("in", {
      type: "string",
      demandOption: true,
      describe: "directory holding the CSV tables and JSON sidecars",
    })
    .option("out", {
      type: "string",
      demandOption: true,
      describe: "path of the SVG file to write",
    })
    .strict()
    .exitProcess(false)
    .fail((message, error) => {
      throw new UsageError(message ?? error?.message ?? "invalid arguments");
    });
  const args = await parser.parse();
  return { in: args.in, out: args.out };
}

/** Build and write one figure; returns the process exit code. */
export async function runFigure(
  name: string,
  argv: readonly string[],
): Promise<number> {
  try {
    const builder = FIGURES.get(name);
    if (builder === undefined) {
      throw new UsageError(
        `unknown figure "${name}" (known: ${[...FIGURES.keys()].join(", ")})`,
      );
    }
    const args = await parseArgs(name, argv);
    const recipe = builder(args.in);
    const svg = renderFigure(recipe, args.in);
    mkdirSync(dirname(args.out), { recursive: true });
    const scratch = `${args.out}.partial`;
    writeFileSync(scratch, svg, "utf-8");
    renameSync(scratch, args.out);
    process.stdout.write(`wrote ${args.out}\n`);
    return 0;
  } catch (error) {
    if (error instanceof UsageError) {
      process.stderr.write(`usage error: ${error.message}\n`);
      return 2;
    }
    if (error instanceof DataError) {
      process.stderr.write(`error: ${error.message}\n`);
      return 1;
    }
    const message = error instanceof Error ? error.message : String(error);
    process.stderr.write(`error: ${message}\n`);
    return 1;
  }
}
