/** Rendering of individual panels onto an SvgBuilder. */

import { join } from "node:path";
import { column, loadTable, type Table } from "./csv.js";
import { fmt, fmtTick } from "./format.js";
import type { LinesPanel, PolarPanel, SeriesSpec } from "./recipe.js";
import { extent, linearScale, logScale, type Scale } from "./scale.js";
import { PALETTE, SvgBuilder } from "./svg.js";

export interface Box {
  x: number;
  y: number;
  width: number;
  height: number;
}

const AXIS_STYLE = 'stroke="#222222" stroke-width="1"';
const TICK_TEXT = 'font-size="10" fill="#222222"';
const LABEL_TEXT = 'font-size="12" fill="#222222"';
const TITLE_TEXT = 'font-size="12" fill="#222222" font-weight="bold"';

interface LoadedSeries {
  spec: SeriesSpec;
  xs: Float64Array;
  ys: Float64Array;
  err?: Float64Array;
  color: string;
}

function loadSeries(inDir: string, series: SeriesSpec[]): LoadedSeries[] {
  return series.map((spec, index) => {
    const wanted = [spec.x, spec.y, ...(spec.yErr ? [spec.yErr] : [])];
    const table: Table = loadTable(join(inDir, spec.csv), wanted, {
      allowNaN: spec.allowNaN ? [spec.y] : [],
    });
    return {
      spec,
      xs: column(table, spec.x),
      ys: column(table, spec.y),
      err: spec.yErr ? column(table, spec.yErr) : undefined,
      color: spec.color ?? PALETTE[index % PALETTE.length],
    };
  });
}

function drawLegend(
  svg: SvgBuilder,
  loaded: LoadedSeries[],
  boxRight: number,
  boxTop: number,
): void {
  const charPx = 6.2;
  const widest = Math.max(...loaded.map((s) => s.spec.label.length));
  const width = 30 + widest * charPx + 8;
  const x0 = boxRight - width - 6;
  let y = boxTop + 8;
  for (const series of loaded) {
    const attrs =
      `stroke="${series.color}" stroke-width="1.8"` +
      (series.spec.dash ? ` stroke-dasharray="${series.spec.dash}"` : "");
    svg.line(x0, y, x0 + 22, y, attrs);
    svg.text(x0 + 28, y + 3.5, series.spec.label, TICK_TEXT);
    y += 14;
  }
}

export function renderLinesPanel(
  svg: SvgBuilder,
  panel: LinesPanel,
  box: Box,
  inDir: string,
): void {
  const loaded = loadSeries(inDir, panel.series);
  const left = box.x + 58;
  const right = box.x + box.width - 10;
  const top = box.y + 22;
  const bottom = box.y + box.height - 38;

  const [xLoRaw, xHiRaw] = extent(loaded.map((s) => s.xs));
  const yArrays = loaded.flatMap((s) => {
    if (!s.err) return [s.ys];
    const up = new Float64Array(s.ys.length);
    const dn = new Float64Array(s.ys.length);
    for (let i = 0; i < s.ys.length; i += 1) {
      up[i] = s.ys[i] + s.err![i];
      dn[i] = s.ys[i] - s.err![i];
    }
    return [up, dn];
  });
  let [yLo, yHi] = extent(yArrays);
  if (panel.refLineY !== undefined) {
    yLo = Math.min(yLo, panel.refLineY);
    yHi = Math.max(yHi, panel.refLineY);
  }

  let xScale: Scale;
  let yScale: Scale;
  if (panel.x.scale === "log") {
    xScale = logScale(xLoRaw, xHiRaw, left, right);
  } else {
    xScale = linearScale(xLoRaw, xHiRaw, left, right);
  }
  if (panel.y.scale === "log") {
    let positiveFloor = Infinity;
    for (const values of yArrays) {
      for (const v of values) {
        if (Number.isFinite(v) && v > 0 && v < positiveFloor) positiveFloor = v;
      }
    }
    // Keep the smallest point strictly inside the domain; cap the span
    // so one stray tiny value cannot flatten everything else.
    const floor = Math.max(positiveFloor / 1.5, yHi * 1e-8);
    yScale = logScale(floor, yHi * 1.3, bottom, top);
  } else {
    const pad = 0.05 * (yHi - yLo || 1);
    yScale = linearScale(yLo - pad, yHi + pad, bottom, top);
  }

  // Frame and ticks.
  svg.raw(
    `<rect x="${fmt(left)}" y="${fmt(top)}" width="${fmt(right - left)}" ` +
      `height="${fmt(bottom - top)}" fill="none" ${AXIS_STYLE}/>`,
  );
  for (const tick of xScale.ticks) {
    const px = xScale.toPx(tick);
    svg.line(px, bottom, px, bottom + 4, AXIS_STYLE);
    svg.text(px, bottom + 15, fmtTick(tick), `${TICK_TEXT} text-anchor="middle"`);
  }
  for (const tick of yScale.ticks) {
    const py = yScale.toPx(tick);
    svg.line(left - 4, py, left, py, AXIS_STYLE);
    svg.text(left - 7, py + 3.5, fmtTick(tick), `${TICK_TEXT} text-anchor="end"`);
  }
  svg.text(
    (left + right) / 2,
    box.y + box.height - 8,
    panel.x.label,
    `${LABEL_TEXT} text-anchor="middle"`,
  );
  svg.raw(
    `<text x="${fmt(box.x + 14)}" y="${fmt((top + bottom) / 2)}" ${LABEL_TEXT} ` +
      `text-anchor="middle" transform="rotate(-90 ${fmt(box.x + 14)} ` +
      `${fmt((top + bottom) / 2)})">${panel.y.label}</text>`,
  );
  svg.text(left, top - 8, panel.title, TITLE_TEXT);

  if (panel.refLineY !== undefined) {
    const py = yScale.toPx(panel.refLineY);
    svg.line(left, py, right, py, 'stroke="#999999" stroke-dasharray="4 3"');
  }

  // On a log axis only strictly positive values are drawable; values at
  // or below the domain floor (possible for band edges) become gaps.
  const clampLog = (v: number) =>
    yScale.kind === "log" && v < yScale.domain[0] ? NaN : v;

  for (const series of loaded) {
    if (series.err) {
      const upper: Array<[number, number]> = [];
      const lower: Array<[number, number]> = [];
      for (let i = 0; i < series.xs.length; i += 1) {
        const px = xScale.toPx(series.xs[i]);
        upper.push([px, yScale.toPx(clampLog(series.ys[i] + series.err[i]))]);
        lower.push([px, yScale.toPx(clampLog(series.ys[i] - series.err[i]))]);
      }
      svg.polygon(
        [...upper, ...lower.reverse()],
        `fill="${series.color}" fill-opacity="0.18" stroke="none"`,
      );
    }
    const points: Array<[number, number]> = [];
    for (let i = 0; i < series.xs.length; i += 1) {
      const value = clampLog(series.ys[i]);
      points.push([
        xScale.toPx(series.xs[i]),
        Number.isFinite(value) ? yScale.toPx(value) : NaN,
      ]);
    }
    const attrs =
      `stroke="${series.color}" stroke-width="1.8"` +
      (series.spec.dash ? ` stroke-dasharray="${series.spec.dash}"` : "");
    svg.path(points, attrs);
    if (series.spec.markers) {
      for (const [px, py] of points) {
        if (Number.isFinite(px) && Number.isFinite(py)) {
          svg.circle(px, py, 2.6, `fill="${series.color}" stroke="none"`);
        }
      }
    }
  }

  drawLegend(svg, loaded, right, top);
}

export function renderPolarPanel(
  svg: SvgBuilder,
  panel: PolarPanel,
  box: Box,
  inDir: string,
): void {
  const loaded = loadSeries(inDir, panel.series);
  const cx = box.x + box.width / 2;
  const cy = box.y + 26 + (box.height - 64) / 2;
  const radius = Math.min(box.width, box.height - 64) / 2 - 16;

  let rHi = -Infinity;
  for (const series of loaded) {
    for (const v of series.ys) {
      if (Number.isFinite(v) && v > rHi) rHi = v;
    }
  }
  if (!(rHi > 0)) rHi = 1;
  if (panel.refCircleR !== undefined) rHi = Math.max(rHi, panel.refCircleR);
  const rScale = linearScale(0, rHi * 1.05, 0, radius, 4);

  // Radial grid with labels along the +x spoke.
  for (const tick of rScale.ticks) {
    if (tick <= 0) continue;
    const r = rScale.toPx(tick);
    svg.circle(cx, cy, r, 'fill="none" stroke="#dddddd" stroke-width="1"');
    svg.text(cx + r + 2, cy - 3, fmtTick(tick), `${TICK_TEXT}`);
  }
  if (panel.refCircleR !== undefined) {
    svg.circle(
      cx,
      cy,
      rScale.toPx(panel.refCircleR),
      'fill="none" stroke="#999999" stroke-dasharray="4 3"',
    );
  }
  const spokeLabels: ReadonlyArray<readonly [number, string]> = [
    [0, "0"],
    [Math.PI / 2, "pi/2"],
    [Math.PI, "pi"],
    [(3 * Math.PI) / 2, "3pi/2"],
  ];
  for (let k = 0; k < 12; k += 1) {
    const angle = (k * Math.PI) / 6;
    svg.line(
      cx,
      cy,
      cx + radius * Math.cos(angle),
      cy - radius * Math.sin(angle),
      'stroke="#eeeeee" stroke-width="1"',
    );
  }
  for (const [angle, label] of spokeLabels) {
    svg.text(
      cx + (radius + 10) * Math.cos(angle),
      cy - (radius + 10) * Math.sin(angle) + 3.5,
      label,
      `${TICK_TEXT} text-anchor="middle"`,
    );
  }

  for (const series of loaded) {
    const points: Array<[number, number]> = [];
    for (let i = 0; i < series.xs.length; i += 1) {
      const value = series.ys[i];
      if (!Number.isFinite(value)) {
        points.push([NaN, NaN]);
        continue;
      }
      const r = rScale.toPx(value);
      points.push([
        cx + r * Math.cos(series.xs[i]),
        cy - r * Math.sin(series.xs[i]),
      ]);
    }
    const attrs =
      `stroke="${series.color}" stroke-width="1.8"` +
      (series.spec.dash ? ` stroke-dasharray="${series.spec.dash}"` : "");
    svg.path(points, attrs);
  }

  svg.text(cx, box.y + 14, panel.title, `${TITLE_TEXT} text-anchor="middle"`);
  svg.text(
    cx,
    box.y + box.height - 10,
    panel.radialLabel,
    `${LABEL_TEXT} text-anchor="middle"`,
  );
}
