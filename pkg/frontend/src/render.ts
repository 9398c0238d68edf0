/** Turn a figure recipe plus an input directory into a complete SVG string. */

import type { FigureRecipe } from "./recipe.js";
import { renderLinesPanel, renderPolarPanel, type Box } from "./panel.js";
import { SvgBuilder } from "./svg.js";

export function renderFigure(recipe: FigureRecipe, inDir: string): string {
  const svg = new SvgBuilder(recipe.width, recipe.height);
  const n = recipe.panels.length;
  if (n === 0) {
    throw new RangeError("figure recipe has no panels");
  }
  const captionSpace = recipe.caption ? 22 : 0;
  const panelWidth = recipe.width / n;
  const panelHeight = recipe.height - captionSpace;
  recipe.panels.forEach((panel, index) => {
    const box: Box = {
      x: index * panelWidth,
      y: 0,
      width: panelWidth,
      height: panelHeight,
    };
    if (panel.kind === "lines") {
      renderLinesPanel(svg, panel, box, inDir);
    } else {
      renderPolarPanel(svg, panel, box, inDir);
    }
  });
  if (recipe.caption) {
    svg.text(
      recipe.width / 2,
      recipe.height - 8,
      recipe.caption,
      'font-size="11" fill="#555555" text-anchor="middle"',
    );
  }
  return svg.render();
}
