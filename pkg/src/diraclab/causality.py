"""Machine-checkable causality statements.

Every "exact zero" clause below really is checked against 0.0: the
CFL = 1 scheme dilates the support of a field by exactly one cell per
side per step, for any potential and mass, so a genuine violation of
the lightcone shows up as a nonzero amplitude, not as a tolerance
question.  Probability inequalities that are rigorous in the continuum
are enforced at 1e-10 to absorb accumulated rounding.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid1D, GridError
from .state import SpinorField, cut
from .dynamics import History, Potential, SchemeConfig, _advance, evolve
from .observables import current

INEQUALITY_TOL = 1e-10
OPERATOR_GRID_CAP = 4096


@dataclass(frozen=True)
class SupportInterval:
    """Smallest cell-aligned interval holding all cells above threshold."""

    z_lo: float
    z_hi: float
    threshold: float
    i_lo: int
    i_hi: int
    empty: bool = False

    @classmethod
    def empty_interval(cls, threshold: float) -> "SupportInterval":
        return cls(np.nan, np.nan, threshold, -1, -1, empty=True)


@dataclass(frozen=True)
class CausalityReport:
    name: str
    passed: bool
    margin: float
    worst_t: float
    worst_q: float
    tolerance: float
    details: str = ""

    def to_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (
            f"{status} {self.name} margin={self.margin!r} tol={self.tolerance!r}"
            f" worst_t={self.worst_t!r} worst_q={self.worst_q!r}"
        )
        if self.details:
            line += f" [{self.details}]"
        return line


def _report(name, margin, worst_t, worst_q, tol, details="") -> CausalityReport:
    return CausalityReport(name, margin >= -tol, float(margin), float(worst_t),
                           float(worst_q), tol, details)


def support(state: SpinorField, threshold: float = 0.0) -> SupportInterval:
    if threshold < 0:
        raise ValueError("threshold must be non-negative")
    amp = np.abs(state.f) + np.abs(state.h)
    idx = np.nonzero(amp > threshold)[0]
    if idx.size == 0:
        return SupportInterval.empty_interval(threshold)
    i_lo, i_hi = int(idx[0]), int(idx[-1])
    g = state.grid
    return SupportInterval(g.boundary(i_lo), g.boundary(i_hi + 1), threshold, i_lo, i_hi)


def lightcone_check(history: History, initial_support: SupportInterval) -> CausalityReport:
    """Support of every snapshot stays inside the initial support dilated
    at light speed (one cell per step), with exact zeros outside."""
    grid = history.grid
    s0 = support(history[0], 0.0)
    if not s0.empty and not initial_support.empty:
        if s0.i_lo < initial_support.i_lo or s0.i_hi > initial_support.i_hi:
            raise ValueError("initial state not supported in initial_support")
    elif not s0.empty and initial_support.empty:
        raise ValueError("initial state not supported in initial_support")

    worst = 0.0
    worst_t = 0.0
    worst_q = np.nan
    for n, snap in enumerate(history):
        if initial_support.empty:
            lo, hi = 0, -1
        else:
            steps = history.step_of(n)
            lo = initial_support.i_lo - steps
            hi = initial_support.i_hi + steps
        amp = np.abs(snap.f) + np.abs(snap.h)
        outside = np.ones(grid.n_cells, dtype=bool)
        outside[max(lo, 0):min(hi, grid.n_cells - 1) + 1] = False
        if outside.any():
            v = float(np.max(amp[outside]))
            if v > worst:
                worst = v
                worst_t = snap.time
                worst_q = grid.centers()[outside][int(np.argmax(amp[outside]))]
    return _report("lightcone", -worst, worst_t, worst_q, 0.0)


def causal_inequality_check(history: History, Q: float) -> CausalityReport:
    """P_t(z > Q + t) <= P_0(z > Q) along the history (trapezium may be
    anchored at any cell boundary Q)."""
    grid = history.grid
    k = grid.boundary_index(Q)
    q_snapped = grid.boundary(k)
    total_steps = history.step_of(len(history) - 1)
    if k + total_steps > grid.n_cells:
        raise GridError("Q + t exits the grid before the run ends")
    dz = grid.dz
    j0_0 = current(history[0]).j0
    p0 = float(np.sum(j0_0[k:])) * dz
    margin = np.inf
    worst_t = 0.0
    for n, snap in enumerate(history):
        idx = k + history.step_of(n)
        pt = float(np.sum(current(snap).j0[idx:])) * dz if idx < grid.n_cells else 0.0
        m = p0 - pt
        if m < margin:
            margin = m
            worst_t = snap.time
    return _report("causal_inequality", margin, worst_t, q_snapped, INEQUALITY_TOL)


def tunneling_bound_check(history: History, L: float, t_max: float) -> CausalityReport:
    """P_t(z > L) <= P_0(z > 0) for every snapshot time t < t_max < L."""
    if not t_max < L:
        raise ValueError("the bound only holds for t_max < L")
    grid = history.grid
    k0 = grid.boundary_index(0.0)
    kL = grid.boundary_index(L)
    dz = grid.dz
    p_leaked = float(np.sum(current(history[0]).j0[k0:])) * dz
    margin = np.inf
    worst_t = 0.0
    checked = 0
    for snap in history:
        if snap.time - history[0].time >= t_max:
            break
        pt = float(np.sum(current(snap).j0[kL:])) * dz
        checked += 1
        if p_leaked - pt < margin:
            margin = p_leaked - pt
            worst_t = snap.time
    if checked == 0:
        margin, worst_t = 0.0, history[0].time
    return _report("tunneling_bound", margin, worst_t, grid.boundary(kL),
                   INEQUALITY_TOL, details=f"leaked={p_leaked!r}")


def decomposition_check(state0: SpinorField, Q: float, potential: Potential,
                        n_steps: int, mass: float,
                        cfg: SchemeConfig | None = None,
                        snapshot_stride: int | None = None) -> CausalityReport:
    """Theta-cut superposition identities under a common potential:
    (a) left + right = whole within 4 ulps per component per step
        taken (linearity; the halves accumulate independent rounding),
    (b) whole = right bitwise on cells beyond Q + t,
    (c) left = 0 exactly there.
    """
    grid = state0.grid
    cfg = cfg or SchemeConfig(grid.dz)
    if snapshot_stride is None:
        snapshot_stride = max(1, n_steps // 8) if n_steps else 1
        while n_steps % snapshot_stride:
            snapshot_stride -= 1
    k = grid.boundary_index(Q)
    left = cut(state0, Q, "left")
    right = cut(state0, Q, "right")
    h_all = evolve(state0, potential, n_steps, cfg, mass, snapshot_stride)
    h_l = evolve(left, potential, n_steps, cfg, mass, snapshot_stride)
    h_r = evolve(right, potential, n_steps, cfg, mass, snapshot_stride)

    lin_excess = 0.0  # amplitude above the 4-ulp linearity allowance
    exact_viol = 0.0
    worst_t = state0.time
    for n in range(len(h_all)):
        sa, sl, sr = h_all[n], h_l[n], h_r[n]
        steps_taken = max(1, h_all.step_of(n))
        for comp in ("u", "w"):
            a = getattr(sa, comp)
            l = getattr(sl, comp)
            r = getattr(sr, comp)
            scale = np.maximum(np.abs(a), np.maximum(np.abs(l), np.abs(r)))
            ex = float(np.max(np.abs((l + r) - a) - 4 * steps_taken * np.spacing(scale)))
            if ex > lin_excess:
                lin_excess = ex
                worst_t = sa.time
            idx = k + h_all.step_of(n)
            if idx < grid.n_cells:
                v = max(float(np.max(np.abs(a[idx:] - r[idx:]))),
                        float(np.max(np.abs(l[idx:]))))
                if v > exact_viol:
                    exact_viol = v
                    worst_t = sa.time
    margin = -max(exact_viol, lin_excess, 0.0)
    return _report("decomposition", margin, worst_t, grid.boundary(k), 0.0,
                   details=f"linearity_excess={max(lin_excess, 0.0)!r} exact_violation={exact_viol!r}")


def operator_identity_check(potential: Potential, grid: Grid1D, n_steps: int,
                            Q: float, mass: float,
                            cfg: SchemeConfig | None = None,
                            grid_cap: int = OPERATOR_GRID_CAP) -> CausalityReport:
    """P(z > Q + t) U(t) P(z < Q) = 0, verified by propagating every
    basis vector supported left of Q and reading the amplitudes beyond
    Q + t at every step.  Exact-zero margin."""
    if grid.n_cells > grid_cap:
        raise GridError(f"grid too large to enumerate a basis ({grid.n_cells} > {grid_cap})")
    if potential.grid != grid:
        raise GridError("potential and check grids differ")
    cfg = cfg or SchemeConfig(grid.dz)
    k = grid.boundary_index(Q)
    if k + n_steps > grid.n_cells:
        raise GridError("forbidden region exits the grid; shorten the run")
    n_basis = 2 * k
    if n_basis == 0 or n_steps < 0:
        return _report("operator_identity", 0.0, 0.0, grid.boundary(k), 0.0)
    u = np.zeros((n_basis, grid.n_cells), dtype=np.complex128)
    w = np.zeros_like(u)
    u[np.arange(k), np.arange(k)] = 1.0
    w[k + np.arange(k), np.arange(k)] = 1.0

    worst = {"v": 0.0, "t": 0.0}

    def watch(step_k, uu, ww):
        idx = k + step_k
        if idx < grid.n_cells:
            v = max(float(np.max(np.abs(uu[:, idx:]))), float(np.max(np.abs(ww[:, idx:]))))
            if v > worst["v"]:
                worst["v"] = v
                worst["t"] = step_k * cfg.dt
    # Basis deltas run off the grid edges by construction; only rightward
    # leakage past Q + t is the claim under test, so the edge guard is off.
    _advance(u, w, 0.0, n_steps, potential, mass, cfg.dt, cfg.splitting_order,
             grid.dz, check_boundary=False, on_step=watch)
    return _report("operator_identity", -worst["v"], worst["t"], grid.boundary(k), 0.0)


def _difference_box(base: Potential, perturbed: Potential):
    """Spacetime hull (z_a, z_b, t_a, t_b) where the two potentials differ,
    or None if identical."""
    starts = sorted({t for t, _ in base.epochs} | {t for t, _ in perturbed.epochs})
    z = base.grid.centers()
    z_lo, z_hi, t_lo, t_hi = np.inf, -np.inf, np.inf, -np.inf
    for i, t in enumerate(starts):
        diff = base.at(t) != perturbed.at(t)
        if diff.any():
            z_lo = min(z_lo, float(z[diff][0]))
            z_hi = max(z_hi, float(z[diff][-1]))
            t_lo = min(t_lo, t)
            t_hi = max(t_hi, starts[i + 1] if i + 1 < len(starts) else np.inf)
    if t_hi < t_lo:
        return None
    return z_lo, z_hi, t_lo, t_hi


def signalling_check(state0: SpinorField, base: Potential, perturbed: Potential,
                     bob_region: tuple[float, float], n_steps: int, mass: float,
                     cfg: SchemeConfig | None = None,
                     snapshot_stride: int | None = None) -> CausalityReport:
    """A potential perturbation outside Bob's past lightcone leaves the
    field at Bob's location bitwise unchanged."""
    grid = state0.grid
    cfg = cfg or SchemeConfig(grid.dz)
    if snapshot_stride is None:
        snapshot_stride = max(1, n_steps // 8) if n_steps else 1
        while n_steps % snapshot_stride:
            snapshot_stride -= 1
    a, b = bob_region
    ia, ib = grid.boundary_index(a), grid.boundary_index(b)
    if ia >= ib:
        raise ValueError("empty Bob region")
    box = _difference_box(base, perturbed)
    t_final = state0.time + n_steps * cfg.dt
    if box is not None:
        z_lo, z_hi, t_lo, t_hi = box
        t_hi_eff = min(t_hi, t_final)
        # Bob's past cone at the final time, evaluated at the box times.
        if t_lo <= t_final and z_lo <= b + (t_final - t_lo) and z_hi >= a - (t_final - t_lo):
            # the widest cone section is at the earliest box time
            raise ValueError("perturbation box intersects Bob's past lightcone")
        del t_hi_eff
    hb = evolve(state0, base, n_steps, cfg, mass, snapshot_stride)
    hp = evolve(state0, perturbed, n_steps, cfg, mass, snapshot_stride)
    worst = 0.0
    worst_t = state0.time
    for sb, sp in zip(hb, hp):
        v = max(float(np.max(np.abs(sb.u[ia:ib] - sp.u[ia:ib]))),
                float(np.max(np.abs(sb.w[ia:ib] - sp.w[ia:ib]))))
        if v > worst:
            worst = v
            worst_t = sb.time
    return _report("signalling", -worst, worst_t, grid.boundary(ia), 0.0)
