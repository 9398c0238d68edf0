/** Absorption lineshape of a strongly coupled pair for two bath strengths. */

import type { FigureRecipe } from "../recipe.js";
import { bathLabel, sidecarFor } from "./labels.js";

export function absorption(inDir: string): FigureRecipe {
  return {
    kind: "lines",
    width: 640,
    height: 420,
    panels: [
      {
        kind: "lines",
        title: "absorption of a strongly coupled pair",
        x: { label: "detuning from site energy (meV)" },
        y: { label: "absorption (arb. units)" },
        series: [
          {
            csv: "lam5.csv",
            x: "omega_mev",
            y: "absorption_arb",
            label: bathLabel(sidecarFor(inDir, "lam5")),
          },
          {
            csv: "lam50.csv",
            x: "omega_mev",
            y: "absorption_arb",
            label: bathLabel(sidecarFor(inDir, "lam50")),
          },
        ],
      },
    ],
  };
}
