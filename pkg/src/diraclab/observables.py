"""Probability current and derived scalar observables.

The current of the two-component system is

    j0 = |f|^2 + |h|^2        (probability density)
    jz = -(f* h + h* f)       (probability flux)

In characteristic variables this is j0 = (|u|^2 + |w|^2)/2 and
jz = (|w|^2 - |u|^2)/2, which makes the timelike bound |jz| <= j0 hold
cellwise to within a rounding of the same two non-negative numbers.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import Grid1D
from .state import SpinorField
from .dynamics import History

#: Regions are ("right", Q), ("left", Q) or ("between", a, b); boundaries
#: snap to the nearest cell edge.
Region = tuple


@dataclass(frozen=True)
class CurrentField:
    grid: Grid1D
    j0: np.ndarray
    jz: np.ndarray
    time: float


def current(state: SpinorField) -> CurrentField:
    a = np.abs(state.u) ** 2
    b = np.abs(state.w) ** 2
    return CurrentField(state.grid, 0.5 * (a + b), 0.5 * (b - a), state.time)


def _density(x) -> tuple[Grid1D, np.ndarray]:
    if isinstance(x, SpinorField):
        c = current(x)
        return c.grid, c.j0
    if isinstance(x, CurrentField):
        return x.grid, x.j0
    raise TypeError(f"expected SpinorField or CurrentField, got {type(x).__name__}")


def probability(x, region: Region) -> float:
    """Probability mass in a region whose edges snap to cell boundaries."""
    grid, j0 = _density(x)
    kind = region[0]
    if kind == "right":
        lo, hi = grid.boundary_index(region[1]), grid.n_cells
    elif kind == "left":
        lo, hi = 0, grid.boundary_index(region[1])
    elif kind == "between":
        lo, hi = grid.boundary_index(region[1]), grid.boundary_index(region[2])
        if lo > hi:
            raise ValueError("inverted region")
    else:
        raise ValueError(f"unknown region kind {kind!r}")
    if lo >= hi:
        return 0.0
    return float(np.sum(j0[lo:hi])) * grid.dz


def probability_right_of(x, Q: float) -> float:
    return probability(x, ("right", Q))


def velocity(cur: CurrentField, floor: float | None = None) -> np.ndarray:
    """Probability velocity v = jz/j0 where j0 >= floor, NaN elsewhere.

    The default floor is 1e-30 of the peak density, so cells made
    exactly zero by the causal scheme never divide 0/0.
    """
    peak = float(np.max(cur.j0)) if cur.j0.size else 0.0
    if floor is None:
        floor = 1e-30 * peak
    if not floor > 0:
        raise ValueError("floor must be positive")
    v = np.full(cur.grid.n_cells, np.nan)
    defined = cur.j0 >= floor
    v[defined] = cur.jz[defined] / cur.j0[defined]
    return v


def continuity_residual(history: History) -> float:
    """Max centered-difference residual of d_t j0 + d_z jz over the
    interior of a stride-1 history."""
    if history.stride != 1:
        raise ValueError("continuity residual needs snapshot stride 1")
    if len(history) < 3 or history.grid.n_cells < 3:
        return 0.0
    currents = [current(s) for s in history]
    j0 = np.stack([c.j0 for c in currents])
    jz = np.stack([c.jz for c in currents])
    dt, dz = history.dt, history.grid.dz
    res = (j0[2:, 1:-1] - j0[:-2, 1:-1]) / (2 * dt) + (jz[1:-1, 2:] - jz[1:-1, :-2]) / (2 * dz)
    return float(np.max(np.abs(res)))


def total_probability_drift(history: History) -> float:
    """Max |P(t) - P(0)| over the whole grid along a history."""
    p0 = history[0].total_probability()
    return max(abs(s.total_probability() - p0) for s in history)
