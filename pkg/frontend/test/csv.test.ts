import { describe, expect, it } from "vitest";

import { j0Range, parseDensityCsv } from "../src/csv.js";

export function syntheticCsv(ts: number[], zs: number[], j0: (t: number, z: number) => number): string {
  const lines = ["t,z,j0,jz"];
  for (const t of ts) {
    for (const z of zs) {
      lines.push(`${t},${z},${j0(t, z)},0.0`);
    }
  }
  return lines.join("\n") + "\n";
}

describe("density csv", () => {
  it("parses a t-major grid", () => {
    const text = syntheticCsv([0, 1, 2], [-1, 0, 1], (t, z) => t + Math.abs(z));
    const grid = parseDensityCsv(text);
    expect(grid.ts).toEqual([0, 1, 2]);
    expect(grid.zs).toEqual([-1, 0, 1]);
    expect(grid.j0[2][0]).toBe(3);
    expect(j0Range(grid)).toEqual([0, 3]);
  });

  it("rejects a missing header", () => {
    expect(() => parseDensityCsv("a,b,c,d\n1,2,3,4\n")).toThrow(/header/);
  });

  it("rejects an empty file with a row count", () => {
    expect(() => parseDensityCsv("t,z,j0,jz\n")).toThrow(/0 data rows/);
  });

  it("rejects ragged snapshots", () => {
    const text = "t,z,j0,jz\n0,0,1,0\n0,1,1,0\n1,0,1,0\n";
    expect(() => parseDensityCsv(text)).toThrow(/expected 2/);
  });

  it("rejects non-numeric fields", () => {
    expect(() => parseDensityCsv("t,z,j0,jz\n0,zero,1,0\n")).toThrow(/non-numeric/);
  });
});
