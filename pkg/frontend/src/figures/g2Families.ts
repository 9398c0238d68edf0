/**
 * Photon correlation versus delay: the anti-dip for the three dimer
 * arrangements, and the short-delay coherent beats of the tilted pair
 * for weak and strong vibrational dressing.
 */

import type { FigureRecipe } from "../recipe.js";
import { bathLabel, couplingLabel, sidecarFor } from "./labels.js";

export function g2Families(inDir: string): FigureRecipe {
  return {
    kind: "multi-panel",
    width: 960,
    height: 420,
    panels: [
      {
        kind: "lines",
        title: "photon correlation vs delay",
        x: { label: "delay tau (ps)" },
        y: { label: "g2(tau)" },
        refLineY: 1,
        series: [
          {
            csv: "h.csv",
            x: "tau_ps",
            y: "g2",
            label: `side-by-side, ${couplingLabel(sidecarFor(inDir, "h"))}`,
          },
          {
            csv: "j.csv",
            x: "tau_ps",
            y: "g2",
            label: `head-to-tail, ${couplingLabel(sidecarFor(inDir, "j"))}`,
          },
          {
            csv: "d45.csv",
            x: "tau_ps",
            y: "g2",
            label: `tilted 45 deg, ${couplingLabel(sidecarFor(inDir, "d45"))}`,
          },
        ],
      },
      {
        kind: "lines",
        title: "coherent beats, tilted pair",
        x: { label: "delay tau (ps)" },
        y: { label: "g2(tau)" },
        series: [
          {
            csv: "beats5.csv",
            x: "tau_ps",
            y: "g2",
            label: bathLabel(sidecarFor(inDir, "beats5")),
          },
          {
            csv: "beats50.csv",
            x: "tau_ps",
            y: "g2",
            label: bathLabel(sidecarFor(inDir, "beats50")),
          },
        ],
      },
    ],
  };
}
