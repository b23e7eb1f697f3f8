"""Exactly-causal time evolution at CFL = 1.

One step factorizes into an exact characteristic transport (u shifts one
cell left, w one cell right, plain copies) and an exact local rotation,
the closed-form exponential of -i (V I + m sigma_x) tau acting on (u, w):

    (u, w) <- exp(-i V tau) [cos(m tau) (u, w) - i sin(m tau) (w, u)]

Strang splitting sandwiches the shift between two half rotations;
Lie splitting shifts and then rotates.  Both preserve exact zeros, so
the discrete domain of dependence is exactly the lightcone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .grid import Grid1D, GridError
from .state import SpinorField

BOUNDARY_MASS_LIMIT = 1e-9


class BoundaryLeakError(RuntimeError):
    """The field reached the grid edge with non-negligible probability."""


@dataclass(frozen=True)
class Potential:
    """External electrostatic potential, piecewise constant in time.

    epochs is a tuple of (t_start, V-array) pairs ordered by t_start;
    V(t) is the last epoch with t_start <= t.
    """

    grid: Grid1D
    epochs: tuple[tuple[float, np.ndarray], ...]

    def __post_init__(self):
        if not self.epochs:
            raise ValueError("potential needs at least one epoch")
        starts = [t for t, _ in self.epochs]
        if starts != sorted(starts):
            raise ValueError("epochs must be ordered by t_start")
        for _, v in self.epochs:
            if v.shape != (self.grid.n_cells,):
                raise ValueError("potential array must have one value per cell")
            if not np.all(np.isfinite(v)):
                raise ValueError("potential must be finite")
            v.setflags(write=False)

    @classmethod
    def static(cls, grid: Grid1D, v: np.ndarray) -> "Potential":
        return cls(grid, ((0.0, np.asarray(v, dtype=float).copy()),))

    def at(self, t: float) -> np.ndarray:
        current = self.epochs[0][1]
        for t_start, v in self.epochs:
            if t_start <= t:
                current = v
            else:
                break
        return current

    def is_zero(self) -> bool:
        return all(not v.any() for _, v in self.epochs)


@dataclass(frozen=True)
class SchemeConfig:
    dt: float
    splitting_order: str = "strang"

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if self.splitting_order not in ("lie", "strang"):
            raise ValueError("splitting_order must be 'lie' or 'strang'")


@dataclass
class History:
    """Time-ordered snapshots with a fixed step stride."""

    grid: Grid1D
    dt: float
    stride: int
    potential: Potential
    snapshots: list[SpinorField] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.snapshots)

    def __iter__(self):
        return iter(self.snapshots)

    def __getitem__(self, i) -> SpinorField:
        return self.snapshots[i]

    def step_of(self, i: int) -> int:
        return i * self.stride

    @property
    def times(self) -> np.ndarray:
        return np.array([s.time for s in self.snapshots])


def to_characteristics(state: SpinorField) -> tuple[np.ndarray, np.ndarray]:
    """(u, w) = (f + h, f - h); the exact round-trip inverse is
    from_characteristics."""
    return state.u.copy(), state.w.copy()


def from_characteristics(grid: Grid1D, u: np.ndarray, w: np.ndarray, time: float = 0.0) -> SpinorField:
    return SpinorField(grid, u, w, time)


def _edge_mass(u: np.ndarray, w: np.ndarray, dz: float) -> float:
    m = (
        np.abs(u[..., 0]) ** 2
        + np.abs(w[..., 0]) ** 2
        + np.abs(u[..., -1]) ** 2
        + np.abs(w[..., -1]) ** 2
    )
    return 0.5 * dz * float(np.max(m))


def _rotate(u, w, v, m, tau):
    if m * tau == 0.0 and not v.any():
        return u, w  # exact identity; skip to keep free transport bitwise
    phase = np.exp(-1j * tau * v)
    c = math.cos(m * tau)
    s = 1j * math.sin(m * tau)
    return phase * (c * u - s * w), phase * (c * w - s * u)


def _shift(u, w):
    u2 = np.empty_like(u)
    u2[..., :-1] = u[..., 1:]
    u2[..., -1] = 0.0
    w2 = np.empty_like(w)
    w2[..., 1:] = w[..., :-1]
    w2[..., 0] = 0.0
    return u2, w2


def _advance(u, w, t, n_steps, potential, m, dt, order, dz, *,
             check_boundary=True, on_step=None):
    """Advance characteristic arrays n_steps; arrays may be batched on
    leading axes.  on_step(k, u, w) is called after each full step."""
    for k in range(n_steps):
        if check_boundary and _edge_mass(u, w, dz) > BOUNDARY_MASS_LIMIT:
            raise BoundaryLeakError(
                f"boundary probability mass exceeds {BOUNDARY_MASS_LIMIT} at t={t}"
            )
        if order == "strang":
            u, w = _rotate(u, w, potential.at(t), m, dt / 2)
            u, w = _shift(u, w)
            u, w = _rotate(u, w, potential.at(t + dt), m, dt / 2)
        else:
            u, w = _shift(u, w)
            u, w = _rotate(u, w, potential.at(t), m, dt)
        t = t + dt
        if on_step is not None:
            on_step(k + 1, u, w)
    return u, w, t


def step(state: SpinorField, potential: Potential, cfg: SchemeConfig, mass: float) -> SpinorField:
    """One CFL = 1 time step."""
    if cfg.dt != state.grid.dz:
        raise GridError(f"CFL = 1 requires dt = dz, got dt={cfg.dt}, dz={state.grid.dz}")
    if potential.grid != state.grid:
        raise GridError("potential and state grids differ")
    u, w, t = _advance(
        state.u.copy(), state.w.copy(), state.time, 1,
        potential, mass, cfg.dt, cfg.splitting_order, state.grid.dz,
    )
    return SpinorField(state.grid, u, w, t)


def evolve(state: SpinorField, potential: Potential, n_steps: int,
           cfg: SchemeConfig, mass: float, snapshot_stride: int = 1) -> History:
    """Evolve n_steps, recording a snapshot every snapshot_stride steps."""
    if cfg.dt != state.grid.dz:
        raise GridError(f"CFL = 1 requires dt = dz, got dt={cfg.dt}, dz={state.grid.dz}")
    if potential.grid != state.grid:
        raise GridError("potential and state grids differ")
    if n_steps < 0:
        raise ValueError("n_steps must be non-negative")
    if snapshot_stride < 1 or (n_steps and n_steps % snapshot_stride):
        raise ValueError("snapshot_stride must divide n_steps")

    hist = History(state.grid, cfg.dt, snapshot_stride, potential, [state])
    if n_steps == 0:
        return hist

    u, w = state.u.copy(), state.w.copy()
    t = state.time

    def record(k, uu, ww):
        if k % snapshot_stride == 0:
            hist.snapshots.append(SpinorField(state.grid, uu, ww, t + k * cfg.dt))

    _advance(u, w, t, n_steps, potential, mass, cfg.dt, cfg.splitting_order,
             state.grid.dz, on_step=record)
    return hist


def rectangular_barrier(grid: Grid1D, v0: float, z_on: float, z_off: float,
                        smoothing: float = 0.0) -> Potential:
    """Barrier of height v0 on [z_on, z_off] with optional cosine ramps
    of the given width on both sides."""
    if not z_on < z_off:
        raise ValueError("need z_on < z_off")
    if smoothing < 0:
        raise ValueError("smoothing must be non-negative")
    z = grid.centers()
    v = np.zeros(grid.n_cells)
    v[(z >= z_on) & (z <= z_off)] = v0
    if smoothing > 0:
        up = (z > z_on - smoothing) & (z < z_on)
        v[up] = v0 * 0.5 * (1.0 + np.cos(np.pi * (z_on - z[up]) / smoothing))
        down = (z > z_off) & (z < z_off + smoothing)
        v[down] = v0 * 0.5 * (1.0 + np.cos(np.pi * (z[down] - z_off) / smoothing))
    return Potential.static(grid, v)


def perturb_potential(potential: Potential, region: tuple[float, float],
                      t_window: tuple[float, float], delta_v: float) -> Potential:
    """Add delta_v inside the spacetime box region x t_window."""
    z_a, z_b = region
    t_a, t_b = t_window
    if not (z_a < z_b and t_a < t_b):
        raise ValueError("degenerate perturbation box")
    z = potential.grid.centers()
    mask = (z >= z_a) & (z <= z_b)
    starts = sorted({t for t, _ in potential.epochs} | {t_a, t_b})
    epochs = []
    for t in starts:
        v = potential.at(t).copy()
        if t_a <= t < t_b:
            v[mask] += delta_v
        epochs.append((t, v))
    return Potential(potential.grid, tuple(epochs))
