// Reader for density.csv: header "t,z,j0,jz", rows t-major then z,
// every snapshot covering the same z grid.
export interface DensityGrid {
  /** snapshot times, ascending */
  ts: number[];
  /** cell-center positions, ascending */
  zs: number[];
  /** j0 values, ts.length rows of zs.length columns */
  j0: Float64Array[];
  /** jz values, same layout */
  jz: Float64Array[];
}

export function parseDensityCsv(text: string): DensityGrid {
  const lines = text.split("\n").filter((l) => l.trim().length > 0);
  if (lines.length === 0 || lines[0].trim() !== "t,z,j0,jz") {
    throw new Error(`density CSV must start with header "t,z,j0,jz"`);
  }
  const rows = lines.length - 1;
  if (rows === 0) {
    throw new Error("density CSV has 0 data rows");
  }
  const ts: number[] = [];
  const zs: number[] = [];
  const j0: Float64Array[] = [];
  const jz: Float64Array[] = [];
  let currentT = NaN;
  let block: number[][] = [];

  const flush = () => {
    if (block.length === 0) return;
    if (zs.length === 0) {
      for (const r of block) zs.push(r[0]);
    } else if (block.length !== zs.length) {
      throw new Error(`snapshot at t=${currentT} has ${block.length} cells, expected ${zs.length}`);
    }
    ts.push(currentT);
    j0.push(Float64Array.from(block, (r) => r[1]));
    jz.push(Float64Array.from(block, (r) => r[2]));
    block = [];
  };

  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== 4) {
      throw new Error(`line ${i + 1}: expected 4 comma-separated fields`);
    }
    const [t, z, a, b] = parts.map(Number);
    if ([t, z, a, b].some((v) => Number.isNaN(v))) {
      throw new Error(`line ${i + 1}: non-numeric field`);
    }
    if (i === 1 || t !== currentT) {
      flush();
      currentT = t;
    }
    block.push([z, a, b]);
  }
  flush();
  return { ts, zs, j0, jz };
}

export function j0Range(grid: DensityGrid): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const row of grid.j0) {
    for (const v of row) {
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  return [lo, hi];
}
