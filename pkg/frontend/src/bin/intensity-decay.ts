#!/usr/bin/env node
import { runFigure } from "../runner.js";

process.exitCode = await runFigure("intensity-decay", process.argv.slice(2));
