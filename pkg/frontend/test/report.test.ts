import { describe, expect, it } from "vitest";

import { parseReport } from "../src/report.js";

const SAMPLE = [
  "PASS lightcone margin=-0.0 tol=0.0 worst_t=0.0 worst_q=0.0",
  "FAIL causal_inequality margin=-2.5e-05 tol=1e-10 worst_t=3.0 worst_q=-20.0",
  "SCALAR norm_drift=4.3e-14",
  "SCALAR final_time=12.0",
  "",
].join("\n");

describe("report parser", () => {
  it("reads check lines with margins", () => {
    const rep = parseReport(SAMPLE);
    expect(rep.checks).toHaveLength(2);
    expect(rep.checks[0]).toMatchObject({ name: "lightcone", passed: true });
    expect(rep.checks[1].passed).toBe(false);
    expect(rep.checks[1].margin).toBeCloseTo(-2.5e-5);
    expect(rep.scalars.norm_drift).toBeCloseTo(4.3e-14);
    expect(rep.error).toBeUndefined();
  });

  it("reads error lines", () => {
    const rep = parseReport("ERROR BoundaryLeakError: mass at edge\n");
    expect(rep.error).toMatch(/BoundaryLeak/);
  });

  it("accepts pass/fail lines without margins", () => {
    const rep = parseReport("PASS fringe rel_phase_velocity_error=1e-15\n");
    expect(rep.checks[0]).toMatchObject({ name: "fringe", passed: true, margin: 0 });
  });
});
