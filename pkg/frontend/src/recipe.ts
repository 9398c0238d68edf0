/**
 * Figure recipes: declarative descriptions of which CSV columns are
 * drawn where.  Rendering a recipe is a pure function of the input
 * files — recipes carry only file names, exact unit-bearing column
 * names, axis labels, and styling.
 */

export interface AxisSpec {
  /** Human axis label including the unit, e.g. "delay (ps)". */
  label: string;
  scale?: "linear" | "log";
}

export interface SeriesSpec {
  /** CSV file name relative to the input directory. */
  csv: string;
  /** Exact unit-bearing column names. */
  x: string;
  y: string;
  /** Optional symmetric error column rendered as a shaded band. */
  yErr?: string;
  label: string;
  color?: string;
  dash?: string;
  markers?: boolean;
  /** Permit nan cells (rendered as path gaps). */
  allowNaN?: boolean;
}

export interface LinesPanel {
  kind: "lines";
  title: string;
  x: AxisSpec;
  y: AxisSpec;
  series: SeriesSpec[];
  /** Dashed horizontal reference, e.g. the uncorrelated level 1. */
  refLineY?: number;
}

export interface PolarPanel {
  kind: "polar";
  title: string;
  /** Label of the radial quantity. */
  radialLabel: string;
  series: SeriesSpec[];
  /** Dashed reference circle, e.g. the independent-emitter level. */
  refCircleR?: number;
}

export type Panel = LinesPanel | PolarPanel;

export interface FigureRecipe {
  /** "lines" and "polar" are single-panel; "multi-panel" tiles a row. */
  kind: "lines" | "polar" | "multi-panel";
  width: number;
  height: number;
  panels: Panel[];
  caption?: string;
}
