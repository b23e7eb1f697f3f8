// Reader for report.txt: lines like
//   PASS lightcone margin=-0.0 tol=0.0 worst_t=... [...]
//   SCALAR norm_drift=4.3e-14
//   ERROR <message>
export interface CheckResult {
  name: string;
  passed: boolean;
  margin: number;
}

export interface Report {
  checks: CheckResult[];
  scalars: Record<string, number>;
  error?: string;
}

const CHECK_RE = /^(PASS|FAIL)\s+(\S+)\s+margin=(\S+)/;

export function parseReport(text: string): Report {
  const report: Report = { checks: [], scalars: {} };
  for (const raw of text.split("\n")) {
    const line = raw.trim();
    if (!line) continue;
    const m = CHECK_RE.exec(line);
    if (m) {
      report.checks.push({ name: m[2], passed: m[1] === "PASS", margin: Number(m[3]) });
      continue;
    }
    if (line.startsWith("PASS ") || line.startsWith("FAIL ")) {
      // pass/fail line without a margin field (e.g. the fringe report)
      report.checks.push({
        name: line.split(/\s+/)[1] ?? "unnamed",
        passed: line.startsWith("PASS "),
        margin: 0,
      });
      continue;
    }
    if (line.startsWith("SCALAR ")) {
      const eq = line.indexOf("=");
      if (eq > 7) {
        const key = line.slice(7, eq);
        const value = Number(line.slice(eq + 1));
        if (!Number.isNaN(value)) report.scalars[key] = value;
      }
      continue;
    }
    if (line.startsWith("ERROR ")) {
      report.error = line.slice(6);
    }
  }
  return report;
}
