#!/usr/bin/env node
import { runFigure } from "../runner.js";

process.exitCode = await runFigure("absorption", process.argv.slice(2));
