#!/usr/bin/env node
import { runFigure } from "../runner.js";

process.exitCode = await runFigure("polar-zero-delay", process.argv.slice(2));
