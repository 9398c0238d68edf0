#!/usr/bin/env node
import { runFigure } from "../runner.js";

process.exitCode = await runFigure("annihilation", process.argv.slice(2));
