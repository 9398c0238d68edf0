/**
 * Minimal deterministic SVG document builder.
 *
 * Rendering is pure string concatenation with fixed-precision
 * coordinates: no timestamps, randomness, locale formatting, or font
 * metrics enter the output, so repeated renders are byte-identical.
 */

import { fmt } from "./format.js";

export const PALETTE = [
  "#1f6fb4",
  "#d1495b",
  "#3a9e5f",
  "#8450a8",
  "#c98a1e",
  "#4fa3a5",
] as const;

export class SvgBuilder {
  private parts: string[] = [];

  constructor(
    readonly width: number,
    readonly height: number,
  ) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
        `height="${height}" viewBox="0 0 ${width} ${height}" ` +
        `font-family="Menlo, monospace">`,
      `<rect width="${width}" height="${height}" fill="#ffffff"/>`,
    );
  }

  raw(fragment: string): void {
    this.parts.push(fragment);
  }

  line(x1: number, y1: number, x2: number, y2: number, attrs: string): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ${attrs}/>`,
    );
  }

  /**
   * Polyline through pixel points; non-finite points break the path
   * into separate segments (used for optically dark sample angles).
   */
  path(points: ReadonlyArray<readonly [number, number]>, attrs: string): void {
    const commands: string[] = [];
    let penDown = false;
    for (const [x, y] of points) {
      if (!Number.isFinite(x) || !Number.isFinite(y)) {
        penDown = false;
        continue;
      }
      commands.push(`${penDown ? "L" : "M"}${fmt(x)} ${fmt(y)}`);
      penDown = true;
    }
    if (commands.length === 0) return;
    this.parts.push(`<path d="${commands.join(" ")}" fill="none" ${attrs}/>`);
  }

  /** Closed filled region (confidence bands). */
  polygon(points: ReadonlyArray<readonly [number, number]>, attrs: string): void {
    const coords = points
      .filter(([x, y]) => Number.isFinite(x) && Number.isFinite(y))
      .map(([x, y]) => `${fmt(x)},${fmt(y)}`)
      .join(" ");
    if (coords.length === 0) return;
    this.parts.push(`<polygon points="${coords}" ${attrs}/>`);
  }

  circle(cx: number, cy: number, r: number, attrs: string): void {
    this.parts.push(
      `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" ${attrs}/>`,
    );
  }

  text(x: number, y: number, content: string, attrs: string): void {
    const escaped = content
      .replaceAll("&", "&amp;")
      .replaceAll("<", "&lt;")
      .replaceAll(">", "&gt;");
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" ${attrs}>${escaped}</text>`,
    );
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}
