// Spacetime density heatmap: z on the horizontal axis, t increasing
// upward, one light ray per overlay anchor drawn at exactly slope +-1
// in data coordinates, optional shaded barrier band.
import { DensityGrid, j0Range } from "./csv.js";
import { Raster, makeRaster, setPixel } from "./png.js";

export interface LightRay {
  t0: number;
  z0: number;
  slope: 1 | -1;
}

export interface HeatmapOptions {
  overlays?: LightRay[];
  barrier?: [number, number];
  /** pixels per snapshot row; the z direction is scaled to keep aspect */
  minWidth?: number;
  minHeight?: number;
}

export const OVERLAY_COLOR: [number, number, number, number] = [255, 40, 40, 255];
export const BARRIER_COLOR: [number, number, number, number] = [90, 90, 90, 110];

/** Dark-blue to yellow ramp; intensity in [0, 1]. */
export function colormap(x: number): [number, number, number, number] {
  const v = Math.min(1, Math.max(0, x));
  const r = Math.round(255 * Math.min(1, 2.5 * Math.max(0, v - 0.4)));
  const g = Math.round(255 * Math.pow(v, 1.2));
  const b = Math.round(90 + 130 * (1 - v) - 90 * Math.max(0, v - 0.5) * 2);
  return [r, g, Math.max(0, Math.min(255, b)), 255];
}

export function renderHeatmap(grid: DensityGrid, options: HeatmapOptions = {}): Raster {
  const nt = grid.ts.length;
  const nz = grid.zs.length;
  const width = Math.max(options.minWidth ?? 600, nz);
  const height = Math.max(options.minHeight ?? 400, nt);
  const raster = makeRaster(width, height);

  const zLo = grid.zs[0];
  const zHi = grid.zs[nz - 1];
  const tLo = grid.ts[0];
  const tHi = grid.ts[nt - 1];
  const [, j0Max] = j0Range(grid);
  const scale = j0Max > 0 ? 1 / j0Max : 1;

  const xOf = (z: number) => ((z - zLo) / (zHi - zLo || 1)) * (width - 1);
  const yOf = (t: number) => (height - 1) - ((t - tLo) / (tHi - tLo || 1)) * (height - 1);

  for (let y = 0; y < height; y++) {
    const t = tLo + ((height - 1 - y) / Math.max(1, height - 1)) * (tHi - tLo);
    const it = nearestIndex(grid.ts, t);
    const row = grid.j0[it];
    for (let x = 0; x < width; x++) {
      const z = zLo + (x / Math.max(1, width - 1)) * (zHi - zLo);
      const iz = nearestIndex(grid.zs, z);
      setPixel(raster, x, y, colormap(Math.sqrt(row[iz] * scale)));
    }
  }

  if (options.barrier) {
    const [on, off] = options.barrier;
    const x0 = Math.round(xOf(Math.min(on, off)));
    const x1 = Math.round(xOf(Math.max(on, off)));
    for (let y = 0; y < height; y++) {
      for (let x = x0; x <= x1; x++) {
        blend(raster, x, y, BARRIER_COLOR);
      }
    }
  }

  for (const ray of options.overlays ?? []) {
    for (let y = 0; y < height; y++) {
      const t = tLo + ((height - 1 - y) / Math.max(1, height - 1)) * (tHi - tLo);
      const z = ray.z0 + ray.slope * (t - ray.t0);
      if (z < zLo || z > zHi) continue;
      const x = Math.round(xOf(z));
      setPixel(raster, x, y, OVERLAY_COLOR);
    }
  }
  return raster;
}

function nearestIndex(sorted: number[], v: number): number {
  let lo = 0;
  let hi = sorted.length - 1;
  while (hi - lo > 1) {
    const mid = (lo + hi) >> 1;
    if (sorted[mid] <= v) lo = mid;
    else hi = mid;
  }
  return Math.abs(sorted[lo] - v) <= Math.abs(sorted[hi] - v) ? lo : hi;
}

function blend(r: Raster, x: number, y: number, rgba: [number, number, number, number]): void {
  if (x < 0 || y < 0 || x >= r.width || y >= r.height) return;
  const i = (y * r.width + x) * 4;
  const a = rgba[3] / 255;
  for (let c = 0; c < 3; c++) {
    r.pixels[i + c] = Math.round(r.pixels[i + c] * (1 - a) + rgba[c] * a);
  }
}
