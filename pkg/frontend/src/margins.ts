// Check-margin chart: one bar group per report, one bar per check.
// Bars for negative margins (violations) are highlighted in red.
import { Report } from "./report.js";
import { Raster, makeRaster, setPixel } from "./png.js";

export const PASS_COLOR: [number, number, number, number] = [70, 130, 180, 255];
export const FAIL_COLOR: [number, number, number, number] = [220, 30, 30, 255];
export const AXIS_COLOR: [number, number, number, number] = [0, 0, 0, 255];

export interface MarginsOptions {
  width?: number;
  height?: number;
}

export function renderMargins(reports: Report[], options: MarginsOptions = {}): Raster {
  if (reports.length === 0) {
    throw new Error("no reports to chart");
  }
  const bars: { value: number; failed: boolean }[] = [];
  for (const rep of reports) {
    for (const check of rep.checks) {
      bars.push({ value: check.margin, failed: !check.passed });
    }
  }
  if (bars.length === 0) {
    throw new Error("reports contain no check lines");
  }
  const width = options.width ?? Math.max(320, bars.length * 24 + 40);
  const height = options.height ?? 240;
  const raster = makeRaster(width, height);

  // log-compressed magnitude so exact zeros sit on the baseline and
  // tiny violations are still visible
  const mag = (v: number) => (v === 0 ? 0 : Math.min(1, (Math.log10(Math.abs(v)) + 16) / 16));
  const baseline = Math.floor(height / 2);
  const span = baseline - 10;

  for (let x = 0; x < width; x++) {
    setPixel(raster, x, baseline, AXIS_COLOR);
  }

  const slot = (width - 40) / bars.length;
  bars.forEach((bar, i) => {
    const x0 = Math.round(20 + i * slot + slot * 0.15);
    const x1 = Math.round(20 + (i + 1) * slot - slot * 0.15);
    const h = Math.round(mag(bar.value) * span);
    const color = bar.failed ? FAIL_COLOR : PASS_COLOR;
    const yTop = bar.value >= 0 ? baseline - Math.max(h, 1) : baseline;
    const yBot = bar.value >= 0 ? baseline - 1 : baseline + Math.max(h, 1);
    for (let y = yTop; y <= yBot; y++) {
      for (let x = x0; x <= Math.max(x0, x1); x++) {
        setPixel(raster, x, y, color);
      }
    }
  });
  return raster;
}
