#!/usr/bin/env node
import { runFigure } from "../runner.js";

process.exitCode = await runFigure("temperature-sweep", process.argv.slice(2));
