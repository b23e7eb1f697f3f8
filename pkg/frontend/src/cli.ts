#!/usr/bin/env node
// plot --kind <heatmap|fringe|margins> --in <file> [--in <file> ...]
//      --out <png> [--overlay t,z[,slope]] [--barrier z_on,z_off]
import { readFileSync, writeFileSync } from "node:fs";
import { parseArgs } from "node:util";

import { parseDensityCsv } from "./csv.js";
import { parseReport } from "./report.js";
import { encodePng } from "./png.js";
import { LightRay, renderHeatmap } from "./heatmap.js";
import { renderFringe } from "./fringe.js";
import { renderMargins } from "./margins.js";

export function run(argv: string[]): number {
  const { values } = parseArgs({
    args: argv,
    options: {
      kind: { type: "string" },
      in: { type: "string", multiple: true },
      out: { type: "string" },
      overlay: { type: "string", multiple: true },
      barrier: { type: "string" },
    },
  });
  const kind = values.kind;
  const inputs = values.in ?? [];
  const out = values.out;
  if (!kind || inputs.length === 0 || !out) {
    process.stderr.write("usage: plot --kind <heatmap|fringe|margins> --in <file> --out <png>\n");
    return 2;
  }

  try {
    if (kind === "heatmap") {
      const grid = parseDensityCsv(readFileSync(inputs[0], "utf8"));
      const overlays: LightRay[] = (values.overlay ?? []).map(parseOverlay);
      const barrier = values.barrier ? parsePair(values.barrier) : undefined;
      writeFileSync(out, encodePng(renderHeatmap(grid, { overlays, barrier })));
    } else if (kind === "fringe") {
      const grid = parseDensityCsv(readFileSync(inputs[0], "utf8"));
      writeFileSync(out, encodePng(renderFringe(grid)));
    } else if (kind === "margins") {
      const reports = inputs.map((p) => parseReport(readFileSync(p, "utf8")));
      writeFileSync(out, encodePng(renderMargins(reports)));
    } else {
      process.stderr.write(`unknown plot kind '${kind}'\n`);
      return 2;
    }
  } catch (err) {
    process.stderr.write(`${err instanceof Error ? err.message : err}\n`);
    return 1;
  }
  return 0;
}

function parseOverlay(spec: string): LightRay {
  const parts = spec.split(",").map(Number);
  if (parts.length < 2 || parts.some(Number.isNaN)) {
    throw new Error(`overlay must be 't,z[,slope]', got '${spec}'`);
  }
  const slope = parts.length > 2 ? parts[2] : 1;
  if (slope !== 1 && slope !== -1) {
    throw new Error("overlay slope must be +1 or -1");
  }
  return { t0: parts[0], z0: parts[1], slope: slope as 1 | -1 };
}

function parsePair(spec: string): [number, number] {
  const parts = spec.split(",").map(Number);
  if (parts.length !== 2 || parts.some(Number.isNaN)) {
    throw new Error(`barrier must be 'z_on,z_off', got '${spec}'`);
  }
  return [parts[0], parts[1]];
}

const invokedDirectly = process.argv[1] && import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(run(process.argv.slice(2)));
}
