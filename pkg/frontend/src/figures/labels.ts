/** Legend text built from sidecar values — never hard-coded numbers. */

import { join } from "node:path";
import { fmt } from "../format.js";
import { loadSidecar, type Sidecar } from "../sidecar.js";

export function sidecarFor(inDir: string, prefix: string): Sidecar {
  return loadSidecar(join(inDir, `${prefix}.json`));
}

/** "J = +7.8 meV" / "J = -15.6 meV" from the resolved coupling. */
export function couplingLabel(sidecar: Sidecar): string {
  const j = sidecar.derived.forster_j_mev;
  const sign = j >= 0 ? "+" : "-";
  return `J = ${sign}${fmt(Math.abs(j), 2)} meV`;
}

/** "lambda0 = 5 meV" from the resolved bath reorganization energy. */
export function bathLabel(sidecar: Sidecar): string {
  return `lambda0 = ${fmt(sidecar.system.lambda0_mev, 2)} meV`;
}

/** "gamma_nr = 0.25 gamma" from the resolved loss rate. */
export function lossLabel(sidecar: Sidecar): string {
  const rate = sidecar.system.nonradiative_rate_gamma;
  return rate === 0 ? "gamma_nr = 0" : `gamma_nr = ${fmt(rate, 2)} gamma`;
}

/** "gamma_eea = 10 gamma" from the resolved annihilation rate. */
export function annihilationLabel(sidecar: Sidecar): string {
  const rate = sidecar.system.eea_rate_gamma;
  return rate === 0 ? "gamma_eea = 0" : `gamma_eea = ${fmt(rate, 2)} gamma`;
}
