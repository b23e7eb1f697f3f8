import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { run } from "../src/cli.js";
import { decodePng } from "../src/png.js";
import { syntheticCsv } from "./csv.test.js";

function workspace(): string {
  return mkdtempSync(join(tmpdir(), "plots-"));
}

const CSV = syntheticCsv(
  Array.from({ length: 11 }, (_, i) => i),
  Array.from({ length: 21 }, (_, i) => i - 10),
  (t, z) => Math.exp(-((z - 0.3 * t) ** 2)),
);

describe("plot cli", () => {
  it("renders a heatmap with overlays and a barrier band", () => {
    const dir = workspace();
    const csv = join(dir, "density.csv");
    const png = join(dir, "out.png");
    writeFileSync(csv, CSV);
    const rc = run(["--kind", "heatmap", "--in", csv, "--out", png,
      "--overlay", "0,-5", "--overlay", "0,5,-1", "--barrier", "0,2"]);
    expect(rc).toBe(0);
    const raster = decodePng(readFileSync(png));
    expect(raster.width).toBeGreaterThan(0);
    expect(raster.height).toBeGreaterThan(0);
  });

  it("renders fringe and margins plots", () => {
    const dir = workspace();
    const csv = join(dir, "density.csv");
    const rep = join(dir, "report.txt");
    writeFileSync(csv, CSV);
    writeFileSync(rep, "PASS lightcone margin=-0.0 tol=0.0 worst_t=0.0 worst_q=0.0\n");
    expect(run(["--kind", "fringe", "--in", csv, "--out", join(dir, "f.png")])).toBe(0);
    expect(run(["--kind", "margins", "--in", rep, "--out", join(dir, "m.png")])).toBe(0);
    expect(readFileSync(join(dir, "f.png")).length).toBeGreaterThan(0);
  });

  it("fails cleanly on bad input", () => {
    const dir = workspace();
    const csv = join(dir, "empty.csv");
    writeFileSync(csv, "t,z,j0,jz\n");
    expect(run(["--kind", "heatmap", "--in", csv, "--out", join(dir, "x.png")])).toBe(1);
    expect(run(["--kind", "nope", "--in", csv, "--out", join(dir, "x.png")])).toBe(2);
    expect(run(["--kind", "heatmap"])).toBe(2);
    expect(run(["--kind", "heatmap", "--in", csv, "--out", join(dir, "x.png"),
      "--overlay", "0,0,2"])).toBe(1);
  });
});
