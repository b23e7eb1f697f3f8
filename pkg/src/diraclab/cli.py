"""Command-line interface.

Subcommands: simulate, verify, dumont, fringe, characteristics, sweep.
Every command writes its artifacts into --out and exits 0 iff all
requested checks pass.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .grid import make_grid
from .oracles import Covector4, FringeSpec, characteristic_determinant, fringe_demo
from .experiments import (ExperimentReport, dumont_config, load_config,
                          report_lines, run_dumont, run_experiment, run_sweep,
                          save_config, write_density_csv, write_report)


def _out_dir(args, cfg=None) -> Path:
    out = args.out or (cfg.out_dir if cfg is not None else "out")
    p = Path(out)
    p.mkdir(parents=True, exist_ok=True)
    return p


def _apply_overrides(cfg, args):
    if getattr(args, "stride", None):
        cfg = replace(cfg, snapshot_stride=args.stride)
    return cfg


def _finish(report: ExperimentReport, history, out: Path, echo_config=None) -> int:
    if history is not None:
        write_density_csv(history, out / "density.csv")
    write_report(report, out / "report.txt")
    if echo_config is not None:
        save_config(echo_config, out / "config.cfg")
    for line in report_lines(report):
        print(line)
    return 0 if report.all_passed else 1


def cmd_simulate(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    report, history = run_experiment(replace(cfg, checks=()))
    return _finish(report, history, _out_dir(args, cfg), cfg)


def cmd_verify(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    if args.check:
        wanted = set(args.check)
        unknown = wanted - {c.name for c in cfg.checks}
        if unknown:
            print(f"checks not in config: {sorted(unknown)}", file=sys.stderr)
            return 2
        cfg = replace(cfg, checks=tuple(c for c in cfg.checks if c.name in wanted))
    report, history = run_experiment(cfg)
    return _finish(report, history, _out_dir(args, cfg), cfg)


def cmd_dumont(args) -> int:
    cfg = load_config(args.config) if args.config else dumont_config()
    cfg = _apply_overrides(cfg, args)
    report, history = run_dumont(cfg)
    return _finish(report, history, _out_dir(args, cfg), cfg)


def cmd_fringe(args) -> int:
    grid = make_grid(-args.half_extent, args.half_extent, args.n_cells)
    result = fringe_demo(FringeSpec(args.k, args.p), grid, args.steps,
                         snapshot_stride=max(1, args.steps // 50))
    rel_err = abs(result["phase_velocity"] - result["expected_phase_velocity"]) \
        / result["expected_phase_velocity"]
    ok = rel_err <= 0.02 and result["max_abs_prob_velocity"] <= 1e-6
    out = _out_dir(args)
    lines = [f"SCALAR {k}={v!r}" for k, v in sorted(result.items())]
    lines.append(f"{'PASS' if ok else 'FAIL'} fringe rel_phase_velocity_error={rel_err!r}")
    (out / "report.txt").write_text("\n".join(lines) + "\n")
    print("\n".join(lines))
    return 0 if ok else 1


def cmd_characteristics(args) -> int:
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(args.samples):
        xi = Covector4(*rng.normal(size=4))
        det = characteristic_determinant(xi)
        closed = xi.minkowski_square() ** 2
        scale = (xi.xi0**2 + xi.xi1**2 + xi.xi2**2 + xi.xi3**2) ** 2
        worst = max(worst, abs(det - closed) / np.spacing(scale))
    ok = worst <= 8.0
    line = f"{'PASS' if ok else 'FAIL'} characteristic_determinant worst_ulps={worst!r} samples={args.samples}"
    out = _out_dir(args)
    (out / "report.txt").write_text(line + "\n")
    print(line)
    return 0 if ok else 1


def cmd_sweep(args) -> int:
    cfg = _apply_overrides(load_config(args.config), args)
    values = [float(v) for v in args.values]
    reports = run_sweep(cfg, args.parameter, values)
    out = _out_dir(args, cfg)
    all_ok = True
    lines = []
    for value, rep in zip(values, reports):
        sub = out / f"{args.parameter}={value!r}"
        sub.mkdir(parents=True, exist_ok=True)
        write_report(rep, sub / "report.txt")
        status = "PASS" if rep.all_passed else "FAIL"
        lines.append(f"{status} {args.parameter}={value!r}")
        all_ok &= rep.all_passed
    (out / "report.txt").write_text("\n".join(lines) + "\n")
    print("\n".join(lines))
    return 0 if all_ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diraclab",
        description="1+1D Dirac tunneling laboratory with causality verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config_required=True):
        p.add_argument("--config", required=config_required, help="flat key-path config file")
        p.add_argument("--out", help="output directory")
        p.add_argument("--stride", type=int, help="snapshot stride override")

    p = sub.add_parser("simulate", help="run an evolution and dump density.csv")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", help="run the causality checks of a config")
    common(p)
    p.add_argument("--check", action="append", help="check name (repeatable)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dumont", help="desk-scale tunneling tail experiment")
    common(p, config_required=False)
    p.set_defaults(func=cmd_dumont)

    p = sub.add_parser("fringe", help="superluminal-fringe demonstration")
    p.add_argument("--out", help="output directory")
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--half-extent", type=float, default=100.0)
    p.add_argument("--n-cells", type=int, default=4000)
    p.add_argument("--steps", type=int, default=200)
    p.set_defaults(func=cmd_fringe)

    p = sub.add_parser("characteristics", help="characteristic determinant identity")
    p.add_argument("--out", help="output directory")
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_characteristics)

    p = sub.add_parser("sweep", help="sweep one parameter over values")
    common(p)
    p.add_argument("--parameter", required=True, choices=["V0", "L", "mass", "k0"])
    p.add_argument("--values", nargs="+", required=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
