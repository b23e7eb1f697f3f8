// Fringe drift plot: the density profile of each snapshot drawn as a
// polyline, later snapshots brighter, so the drifting interference
// pattern is visible at a glance.
import { DensityGrid, j0Range } from "./csv.js";
import { Raster, makeRaster, setPixel } from "./png.js";

export interface FringeOptions {
  width?: number;
  height?: number;
}

export function renderFringe(grid: DensityGrid, options: FringeOptions = {}): Raster {
  const width = options.width ?? 800;
  const height = options.height ?? 400;
  const raster = makeRaster(width, height);
  const [, j0Max] = j0Range(grid);
  const scale = j0Max > 0 ? 1 / j0Max : 1;
  const nz = grid.zs.length;

  grid.j0.forEach((row, it) => {
    const shade = grid.ts.length > 1 ? it / (grid.ts.length - 1) : 1;
    const color: [number, number, number, number] = [
      Math.round(40 + 180 * shade),
      60,
      Math.round(220 - 160 * shade),
      255,
    ];
    let prevY = -1;
    for (let x = 0; x < width; x++) {
      const iz = Math.min(nz - 1, Math.round((x / Math.max(1, width - 1)) * (nz - 1)));
      const y = Math.round((height - 5) * (1 - row[iz] * scale)) + 2;
      if (prevY >= 0) {
        const lo = Math.min(prevY, y);
        const hi = Math.max(prevY, y);
        for (let yy = lo; yy <= hi; yy++) setPixel(raster, x, yy, color);
      } else {
        setPixel(raster, x, y, color);
      }
      prevY = y;
    }
  });
  return raster;
}
