/** Effect of exciton-exciton annihilation on the correlation. */

import type { FigureRecipe, LinesPanel, SeriesSpec } from "../recipe.js";
import { annihilationLabel, sidecarFor } from "./labels.js";

function panel(inDir: string, tag: "h" | "j", title: string): LinesPanel {
  const series: SeriesSpec[] = ["eea0", "eea1", "eea10", "eea100"].map(
    (level) => {
      const prefix = `${tag}-${level}`;
      return {
        csv: `${prefix}.csv`,
        x: "tau_ps",
        y: "g2",
        label: annihilationLabel(sidecarFor(inDir, prefix)),
      };
    },
  );
  return {
    kind: "lines",
    title,
    x: { label: "delay tau (ps)" },
    y: { label: "g2(tau)" },
    refLineY: 1,
    series,
  };
}

export function annihilation(inDir: string): FigureRecipe {
  return {
    kind: "multi-panel",
    width: 960,
    height: 420,
    panels: [
      panel(inDir, "h", "side-by-side pair (J > 0)"),
      panel(inDir, "j", "head-to-tail pair (J < 0)"),
    ],
  };
}
