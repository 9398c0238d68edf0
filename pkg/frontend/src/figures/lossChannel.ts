/** Effect of a competing non-radiative loss channel on the correlation. */

import type { FigureRecipe, LinesPanel, SeriesSpec } from "../recipe.js";
import { lossLabel, sidecarFor } from "./labels.js";

function panel(inDir: string, tag: "h" | "j", title: string): LinesPanel {
  const series: SeriesSpec[] = ["nr0", "nr025", "nr1"].map((level) => {
    const prefix = `${tag}-${level}`;
    return {
      csv: `${prefix}.csv`,
      x: "tau_ps",
      y: "g2",
      label: lossLabel(sidecarFor(inDir, prefix)),
    };
  });
  return {
    kind: "lines",
    title,
    x: { label: "delay tau (ps)" },
    y: { label: "g2(tau)" },
    refLineY: 1,
    series,
  };
}

export function lossChannel(inDir: string): FigureRecipe {
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
