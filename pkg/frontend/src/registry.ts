/** Figure name -> recipe builder. One entry per figure family. */

import type { FigureRecipe } from "./recipe.js";
import { absorption } from "./figures/absorption.js";
import { annihilation } from "./figures/annihilation.js";
import { disorderIrf } from "./figures/disorderIrf.js";
import { g2Families } from "./figures/g2Families.js";
import { intensityDecay } from "./figures/intensityDecay.js";
import { lossChannel } from "./figures/lossChannel.js";
import { polarZeroDelay } from "./figures/polarZeroDelay.js";
import { temperatureSweep } from "./figures/temperatureSweep.js";

export type FigureBuilder = (inDir: string) => FigureRecipe;

export const FIGURES: ReadonlyMap<string, FigureBuilder> = new Map([
  ["intensity-decay", intensityDecay],
  ["g2-families", g2Families],
  ["polar-zero-delay", polarZeroDelay],
  ["temperature-sweep", temperatureSweep],
  ["disorder-irf", disorderIrf],
  ["absorption", absorption],
  ["loss-channel", lossChannel],
  ["annihilation", annihilation],
]);
