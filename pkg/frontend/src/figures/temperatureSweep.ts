/** Zero-delay correlation versus bath temperature for both coupling signs. */

import type { FigureRecipe } from "../recipe.js";
import { couplingLabel, sidecarFor } from "./labels.js";

export function temperatureSweep(inDir: string): FigureRecipe {
  return {
    kind: "lines",
    width: 640,
    height: 420,
    panels: [
      {
        kind: "lines",
        title: "zero-delay correlation vs temperature",
        x: { label: "temperature (K)" },
        y: { label: "g2(0)", scale: "log" },
        refLineY: 1,
        series: [
          {
            csv: "h.csv",
            x: "temperature_k",
            y: "g2_zero_delay",
            label: couplingLabel(sidecarFor(inDir, "h")),
            markers: true,
          },
          {
            csv: "j.csv",
            x: "temperature_k",
            y: "g2_zero_delay",
            label: couplingLabel(sidecarFor(inDir, "j")),
            markers: true,
          },
        ],
      },
    ],
  };
}
