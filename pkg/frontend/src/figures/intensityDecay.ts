/** Total emission rate after double excitation, for both coupling signs. */

import type { FigureRecipe } from "../recipe.js";
import { couplingLabel, sidecarFor } from "./labels.js";

export function intensityDecay(inDir: string): FigureRecipe {
  return {
    kind: "lines",
    width: 640,
    height: 420,
    panels: [
      {
        kind: "lines",
        title: "emission decay after double excitation",
        x: { label: "time (ps)" },
        y: { label: "emission rate (units of gamma)", scale: "log" },
        series: [
          {
            csv: "h.csv",
            x: "time_ps",
            y: "intensity_gamma",
            label: couplingLabel(sidecarFor(inDir, "h")),
          },
          {
            csv: "j.csv",
            x: "time_ps",
            y: "intensity_gamma",
            label: couplingLabel(sidecarFor(inDir, "j")),
            dash: "6 3",
          },
        ],
      },
    ],
  };
}
