#!/usr/bin/env node
import { runFigure } from "../runner.js";

process.exitCode = await runFigure("g2-families", process.argv.slice(2));
