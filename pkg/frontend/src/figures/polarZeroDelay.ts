/**
 * Zero-delay correlation versus detector direction for the orthogonal
 * arrangement.  Directions parallel to a dipole are optically dark and
 * arrive as nan cells, drawn as gaps.
 */

import type { FigureRecipe, SeriesSpec } from "../recipe.js";

function sweepSeries(csv: string, label: string): SeriesSpec {
  return {
    csv,
    x: "angle_rad",
    y: "g2_zero_delay",
    label,
    allowNaN: true,
  };
}

export function polarZeroDelay(inDir: string): FigureRecipe {
  void inDir; // all annotation text is fixed for this figure
  return {
    kind: "polar",
    width: 760,
    height: 400,
    caption: "dashed circle: uncorrelated-detector level 0.5",
    panels: [
      {
        kind: "polar",
        title: "detector tilted from z toward x",
        radialLabel: "g2(0) vs polar angle",
        refCircleR: 0.5,
        series: [sweepSeries("polar.csv", "x-z plane")],
      },
      {
        kind: "polar",
        title: "detector rotated about z",
        radialLabel: "g2(0) vs azimuth",
        refCircleR: 0.5,
        series: [sweepSeries("azimuthal.csv", "x-y plane")],
      },
    ],
  };
}
