/**
 * How ensemble disorder and detector time response wash out the
 * correlation anti-dip: shaded bands are ensemble-mean +/- standard
 * error; the right panel convolves one fixed geometry with Gaussian
 * instrument responses of increasing width.
 */

import { DataError } from "../errors.js";
import { fmt } from "../format.js";
import type { FigureRecipe, SeriesSpec } from "../recipe.js";
import type { Sidecar } from "../sidecar.js";
import { sidecarFor } from "./labels.js";

function ensembleLabel(sidecar: Sidecar, file: string): string {
  const disorder = sidecar.disorder;
  if (disorder === undefined) {
    throw new DataError(`${file}: sidecar has no disorder section`);
  }
  const kappa = `kappa = ${fmt(disorder.kappa_orient, 2)}`;
  return disorder.detection_scheme === "fixed"
    ? `orientation only (${kappa})`
    : `orientation + detection (${kappa})`;
}

function ensembleSeries(
  inDir: string,
  prefix: string,
  color: string,
): SeriesSpec {
  return {
    csv: `${prefix}.csv`,
    x: "tau_ps",
    y: "g2_mean",
    yErr: "g2_stderr",
    label: ensembleLabel(sidecarFor(inDir, prefix), `${prefix}.json`),
    color,
  };
}

export function disorderIrf(inDir: string): FigureRecipe {
  const irf = sidecarFor(inDir, "irf");
  const widths = irf.observable["irf_fwhm_ps"];
  if (!Array.isArray(widths) || !widths.every((w) => typeof w === "number")) {
    throw new DataError("irf.json: observable.irf_fwhm_ps must be a number list");
  }
  const blurSeries: SeriesSpec[] = [
    { csv: "irf.csv", x: "tau_ps", y: "g2", label: "no blur" },
  ];
  for (const width of widths) {
    blurSeries.push({
      csv: "irf.csv",
      x: "tau_ps",
      y: `g2_irf${fmt(width, 6)}ps`,
      label: `FWHM ${fmt(width, 2)} ps`,
    });
  }
  return {
    kind: "multi-panel",
    width: 960,
    height: 420,
    panels: [
      {
        kind: "lines",
        title: "ensemble orientational disorder",
        x: { label: "delay tau (ps)" },
        y: { label: "g2(tau)" },
        refLineY: 1,
        series: [
          {
            csv: "fixed.csv",
            x: "tau_ps",
            y: "g2",
            label: "fixed geometry",
            color: "#555555",
          },
          ensembleSeries(inDir, "orient", "#1f6fb4"),
          ensembleSeries(inDir, "both", "#d1495b"),
        ],
      },
      {
        kind: "lines",
        title: "detector time-response blur",
        x: { label: "delay tau (ps)" },
        y: { label: "g2(tau)" },
        refLineY: 1,
        series: blurSeries,
      },
    ],
  };
}
