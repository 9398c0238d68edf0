/**
 * Typed loader for the simulation CLI's JSON sidecar, used only for
 * legend and annotation text.  Figures never recompute physics: every
 * number displayed comes from the bundle itself.
 */

import { readFileSync } from "node:fs";
import { z } from "zod";
import { DataError } from "./errors.js";

const SidecarSchema = z.object({
  system: z
    .object({
      lambda0_mev: z.number(),
      omega_c_mev: z.number(),
      temperature_k: z.number(),
      nonradiative_rate_gamma: z.number(),
      eea_rate_gamma: z.number(),
    })
    .loose(),
  observable: z.object({ kind: z.string() }).loose(),
  disorder: z
    .object({
      kappa_orient: z.number(),
      detection_scheme: z.string(),
      kappa_detect: z.number(),
    })
    .loose()
    .optional(),
  derived: z
    .object({
      forster_j_mev: z.number(),
      j_prime_mev: z.number(),
      kappa0: z.number(),
      gamma_ref_per_ps: z.number(),
    })
    .loose(),
  results: z.record(z.string(), z.unknown()),
});

export type Sidecar = z.infer<typeof SidecarSchema>;

export function loadSidecar(file: string): Sidecar {
  let raw: string;
  try {
    raw = readFileSync(file, "utf-8");
  } catch {
    throw new DataError(`cannot read sidecar ${file}`);
  }
  let doc: unknown;
  try {
    doc = JSON.parse(raw);
  } catch (error) {
    throw new DataError(`${file}: invalid JSON (${(error as Error).message})`);
  }
  const result = SidecarSchema.safeParse(doc);
  if (!result.success) {
    throw new DataError(`${file}: ${result.error.issues[0]?.message ?? "bad sidecar"}`);
  }
  return result.data;
}
