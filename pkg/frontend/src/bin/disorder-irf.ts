#!/usr/bin/env node
import { runFigure } from "../runner.js";

process.exitCode = await runFigure("disorder-irf", process.argv.slice(2));
