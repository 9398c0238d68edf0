#!/usr/bin/env node
import { runFigure } from "../runner.js";

process.exitCode = await runFigure("loss-channel", process.argv.slice(2));
