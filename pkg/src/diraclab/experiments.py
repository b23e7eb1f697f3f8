"""Experiment orchestration: configs, runs, sweeps, and file outputs.

Config files are flat text: one `dotted.key.path = value` per line, where
values are Python literals (numbers, quoted strings, lists), so
parse(serialize(config)) == config holds exactly.  CSV and report files
are byte-deterministic for a given config (timings are kept out of the
report body).
"""
from __future__ import annotations

import ast
import math
import time as _time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict
from pathlib import Path

import numpy as np

from .grid import Grid1D, make_grid
from .state import PacketSpec, SpinorField, gaussian_packet, compact_packet, cut
from .dynamics import (History, Potential, SchemeConfig, evolve,
                       perturb_potential, rectangular_barrier)
from .observables import current, probability_right_of, total_probability_drift
from . import causality


@dataclass(frozen=True)
class GridSpec:
    z_min: float
    z_max: float
    n_cells: int


@dataclass(frozen=True)
class BarrierSpec:
    v0: float = 0.0
    z_on: float = 0.0
    z_off: float = 1.0
    smoothing: float = 0.0


@dataclass(frozen=True)
class CheckSpec:
    name: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ExperimentConfig:
    grid: GridSpec
    packet: PacketSpec
    barrier: BarrierSpec
    splitting_order: str = "strang"
    n_steps: int = 0
    snapshot_stride: int = 1
    out_dir: str = "out"
    seed: int = 0
    checks: tuple[CheckSpec, ...] = ()

    def build_grid(self) -> Grid1D:
        return make_grid(self.grid.z_min, self.grid.z_max, self.grid.n_cells)


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    checks: list[causality.CausalityReport]
    scalars: dict
    wall_seconds: float = 0.0
    error: str | None = None

    @property
    def all_passed(self) -> bool:
        return self.error is None and all(r.passed for r in self.checks)


# --- config file round-trip -------------------------------------------------

def _literal(v) -> str:
    if isinstance(v, (bool, int, str)):
        return repr(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            raise ValueError("non-finite value in config")
        return repr(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_literal(x) for x in v) + "]"
    raise TypeError(f"cannot serialize {type(v).__name__}")


def serialize_config(cfg: ExperimentConfig) -> str:
    items: list[tuple[str, object]] = []
    for section, mapping in (("grid", asdict(cfg.grid)),
                             ("packet", asdict(cfg.packet)),
                             ("barrier", asdict(cfg.barrier))):
        items += [(f"{section}.{k}", v) for k, v in mapping.items()]
    items += [
        ("run.splitting_order", cfg.splitting_order),
        ("run.n_steps", cfg.n_steps),
        ("run.snapshot_stride", cfg.snapshot_stride),
        ("run.out_dir", cfg.out_dir),
        ("run.seed", cfg.seed),
    ]
    for c in cfg.checks:
        if not c.params:
            items.append((f"check.{c.name}.enabled", True))
        items += [(f"check.{c.name}.{k}", v) for k, v in c.params.items()]
    return "\n".join(f"{k} = {_literal(v)}" for k, v in items) + "\n"


def parse_config(text: str) -> ExperimentConfig:
    flat: dict[str, object] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"line {ln}: expected 'key.path = value'")
        key, _, value = line.partition("=")
        flat[key.strip()] = ast.literal_eval(value.strip())

    def section(name: str) -> dict:
        prefix = name + "."
        return {k[len(prefix):]: v for k, v in flat.items()
                if k.startswith(prefix) and k.count(".") == name.count(".") + 1}

    check_names: list[str] = []
    for k in flat:
        if k.startswith("check."):
            name = k.split(".")[1]
            if name not in check_names:
                check_names.append(name)
    checks = tuple(
        CheckSpec(name, {k: v for k, v in section(f"check.{name}").items()
                         if k != "enabled"})
        for name in check_names
    )
    run = section("run")
    return ExperimentConfig(
        grid=GridSpec(**section("grid")),
        packet=PacketSpec(**section("packet")),
        barrier=BarrierSpec(**section("barrier")),
        splitting_order=run.get("splitting_order", "strang"),
        n_steps=run.get("n_steps", 0),
        snapshot_stride=run.get("snapshot_stride", 1),
        out_dir=run.get("out_dir", "out"),
        seed=run.get("seed", 0),
        checks=checks,
    )


def load_config(path: str | Path) -> ExperimentConfig:
    return parse_config(Path(path).read_text())


def save_config(cfg: ExperimentConfig, path: str | Path) -> None:
    Path(path).write_text(serialize_config(cfg))


# --- file outputs -----------------------------------------------------------

def write_density_csv(history: History, path: str | Path) -> None:
    """density.csv: header t,z,j0,jz; rows t-major then z; full doubles."""
    z = history.grid.centers()
    rows = ["t,z,j0,jz"]
    for snap in history:
        c = current(snap)
        t = repr(float(snap.time))
        rows.extend(
            f"{t},{float(z[i])!r},{float(c.j0[i])!r},{float(c.jz[i])!r}"
            for i in range(history.grid.n_cells)
        )
    Path(path).write_text("\n".join(rows) + "\n")


def report_lines(report: ExperimentReport) -> list[str]:
    lines = [r.to_line() for r in report.checks]
    for k in sorted(report.scalars):
        lines.append(f"SCALAR {k}={report.scalars[k]!r}")
    if report.error is not None:
        lines.append(f"ERROR {report.error}")
    return lines


def write_report(report: ExperimentReport, path: str | Path) -> None:
    Path(path).write_text("\n".join(report_lines(report)) + "\n")


# --- building blocks --------------------------------------------------------

def build_packet(cfg: ExperimentConfig, grid: Grid1D) -> SpinorField:
    spec = cfg.packet
    if spec.kind == "gaussian":
        return gaussian_packet(spec, grid)
    if spec.kind == "compact_bump":
        return compact_packet(spec, (spec.z0 - spec.width, spec.z0 + spec.width), grid)
    raise ValueError(f"cannot build initial data of kind {spec.kind!r}")


def build_potential(cfg: ExperimentConfig, grid: Grid1D) -> Potential:
    b = cfg.barrier
    if b.v0 == 0.0:
        return Potential.static(grid, np.zeros(grid.n_cells))
    return rectangular_barrier(grid, b.v0, b.z_on, b.z_off, b.smoothing)


def _run_check(spec: CheckSpec, cfg: ExperimentConfig, history: History,
               state0: SpinorField, potential: Potential) -> causality.CausalityReport:
    p = spec.params
    m = cfg.packet.mass
    if spec.name == "lightcone":
        thr = p.get("threshold", 0.0)
        return causality.lightcone_check(history, causality.support(state0, thr))
    if spec.name == "causal_inequality":
        return causality.causal_inequality_check(history, p["q"])
    if spec.name == "tunneling_bound":
        return causality.tunneling_bound_check(history, p["barrier_length"], p["t_max"])
    if spec.name == "decomposition":
        return causality.decomposition_check(
            state0, p["q"], potential, p.get("n_steps", cfg.n_steps), m)
    if spec.name == "operator_identity":
        return causality.operator_identity_check(
            potential, history.grid, p.get("n_steps", cfg.n_steps), p["q"], m)
    if spec.name == "signalling":
        perturbed = perturb_potential(
            potential,
            (p["alice_z_min"], p["alice_z_max"]),
            (p["alice_t_min"], p["alice_t_max"]),
            p["delta_v"],
        )
        return causality.signalling_check(
            state0, potential, perturbed, (p["bob_z_min"], p["bob_z_max"]),
            p.get("n_steps", cfg.n_steps), m)
    raise ValueError(f"unknown check {spec.name!r}")


def run_experiment(cfg: ExperimentConfig) -> tuple[ExperimentReport, History]:
    t0 = _time.perf_counter()
    grid = cfg.build_grid()
    state0 = build_packet(cfg, grid)
    potential = build_potential(cfg, grid)
    scheme = SchemeConfig(grid.dz, cfg.splitting_order)
    history = evolve(state0, potential, cfg.n_steps, scheme, cfg.packet.mass,
                     cfg.snapshot_stride)
    checks = [_run_check(c, cfg, history, state0, potential) for c in cfg.checks]
    scalars = {
        "norm_drift": total_probability_drift(history),
        "final_time": history[-1].time,
    }
    report = ExperimentReport(cfg, checks, scalars,
                              wall_seconds=_time.perf_counter() - t0)
    return report, history


# --- named experiments ------------------------------------------------------

def q_point(t_T: float, L: float) -> float:
    """Left end of the initial tail in the causal past of the tunnelled
    packet: Q = L - t_T."""
    if t_T < 0:
        raise ValueError("transit time must be non-negative")
    return L - t_T


def arrival_time(history: History, z_detect: float, threshold_prob: float) -> float | None:
    """First snapshot time with P_t(z > z_detect) >= threshold_prob."""
    for snap in history:
        if probability_right_of(snap, z_detect) >= threshold_prob:
            return snap.time
    return None


def analytic_gaussian_tail(z0: float, width: float, Q: float) -> float:
    """Closed-form P_0(z > Q) for density exp(-(z-z0)^2/width^2)/sqrt(pi width^2)."""
    return 0.5 * math.erfc((Q - z0) / width)


def dumont_config(v0: float = 5.0, n_cells: int = 12000, n_steps: int = 5000,
                  snapshot_stride: int = 100, k0: float = 2.0,
                  out_dir: str = "out") -> ExperimentConfig:
    """Desk-scale tunneling setup: Gaussian at z0 = -120 of width 15
    against a barrier on [0, 15], natural units with m = 1."""
    return ExperimentConfig(
        grid=GridSpec(-400.0, 200.0, n_cells),
        packet=PacketSpec(kind="gaussian", z0=-120.0, width=15.0, k0=k0, mass=1.0),
        barrier=BarrierSpec(v0=v0, z_on=0.0, z_off=15.0),
        n_steps=n_steps,
        snapshot_stride=snapshot_stride,
        out_dir=out_dir,
    )


def run_dumont(cfg: ExperimentConfig | None = None) -> tuple[ExperimentReport, History]:
    """Tunneling run with tail bookkeeping: transit-time estimate from the
    transmitted mass, Q-point, tail probability against its closed form,
    and the tunnelled <= tail inequality."""
    cfg = cfg or dumont_config()
    report, history = run_experiment(cfg)
    grid = history.grid
    L = cfg.barrier.z_off

    transmitted_final = probability_right_of(history[-1], L)
    threshold = 0.1 * transmitted_final if transmitted_final > 0 else math.inf
    t_T = arrival_time(history, L, threshold)
    scalars = report.scalars
    scalars["transmitted_final"] = transmitted_final
    if t_T is not None:
        q = q_point(t_T, L)
        tail = probability_right_of(history[0], q)
        tunnelled = max(probability_right_of(s, grid.snap(q) + (s.time - history[0].time))
                        for s in history)
        scalars.update({
            "t_T": t_T,
            "q": q,
            "tail_probability": tail,
            "tail_probability_analytic": analytic_gaussian_tail(
                cfg.packet.z0, cfg.packet.width, grid.snap(q)),
            "tunnelled_probability": tunnelled,
        })
        report.checks.append(causality.causal_inequality_check(
            _clip_history_for_q(history, grid, q), grid.snap(q)))
    return report, history


def _clip_history_for_q(history: History, grid: Grid1D, q: float) -> History:
    """Snapshots for which the comoving boundary Q + t is still on the grid."""
    k = grid.boundary_index(q)
    kept = [s for n, s in enumerate(history)
            if k + history.step_of(n) <= grid.n_cells]
    clipped = History(history.grid, history.dt, history.stride,
                      history.potential, kept)
    return clipped


def run_sweep(cfg: ExperimentConfig, parameter: str, values) -> list[ExperimentReport]:
    """Independent runs with one parameter swept; per-run errors are
    captured in the corresponding report, not raised."""
    if parameter not in ("V0", "L", "mass", "k0"):
        raise ValueError(f"unknown sweep parameter {parameter!r}")

    def variant(v) -> ExperimentConfig:
        if parameter == "V0":
            return _replace_barrier(cfg, v0=float(v))
        if parameter == "L":
            return _replace_barrier(cfg, z_off=cfg.barrier.z_on + float(v))
        if parameter == "mass":
            return _replace_packet(cfg, mass=float(v))
        return _replace_packet(cfg, k0=float(v))

    def one(v) -> ExperimentReport:
        c = cfg
        try:
            c = variant(v)
            return run_dumont(c)[0] if _is_dumont_like(c) else run_experiment(c)[0]
        except Exception as e:  # noqa: BLE001 - sibling runs must survive
            return ExperimentReport(c, [], {}, error=f"{type(e).__name__}: {e}")

    if not len(values):
        return []
    with ThreadPoolExecutor(max_workers=min(4, len(values))) as pool:
        return list(pool.map(one, values))


def _is_dumont_like(cfg: ExperimentConfig) -> bool:
    return cfg.packet.kind == "gaussian" and cfg.barrier.z_on == 0.0


def _replace_barrier(cfg: ExperimentConfig, **kw) -> ExperimentConfig:
    from dataclasses import replace
    return replace(cfg, barrier=replace(cfg.barrier, **kw))


def _replace_packet(cfg: ExperimentConfig, **kw) -> ExperimentConfig:
    from dataclasses import replace
    return replace(cfg, packet=replace(cfg.packet, **kw))
