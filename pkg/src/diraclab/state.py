"""Two-component spinor fields and initial-data constructors.

A state carries the two coupled components (f, h) of the 1+1D Dirac
system.  Internally the arrays stored are the characteristic amplitudes

    u = f + h   (left-mover at light speed)
    w = f - h   (right-mover at light speed)

because the time stepper transports u and w by exact cell shifts.  The
components f = (u+w)/2 and h = (u-w)/2 are exact halvings, so nothing is
lost by this representation, and free massless evolution stays bitwise
reproducible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import Grid1D, GridError

NORM_TOL = 1e-12


class TruncationError(ValueError):
    """Grid too narrow for the requested packet (tail mass above tolerance)."""


@dataclass(frozen=True)
class PacketSpec:
    kind: str  # gaussian | compact_bump | plane_superposition
    z0: float = 0.0
    width: float = 1.0
    k0: float = 0.0
    mass: float = 1.0
    k: float = 0.0
    p: float = 0.0

    def __post_init__(self):
        if self.kind not in ("gaussian", "compact_bump", "plane_superposition"):
            raise ValueError(f"unknown packet kind {self.kind!r}")
        if not self.width > 0:
            raise ValueError("width must be positive")
        if self.mass < 0:
            raise ValueError("mass must be non-negative")
        if self.kind == "plane_superposition" and not self.p > self.k > 0:
            raise ValueError("plane superposition requires p > k > 0")


class SpinorField:
    """Immutable two-component spinor field on a uniform grid."""

    __slots__ = ("grid", "u", "w", "time")

    def __init__(self, grid: Grid1D, u: np.ndarray, w: np.ndarray, time: float = 0.0):
        u = np.asarray(u, dtype=np.complex128)
        w = np.asarray(w, dtype=np.complex128)
        if u.shape != (grid.n_cells,) or w.shape != (grid.n_cells,):
            raise ValueError("component arrays must have one value per cell")
        u = u.copy()
        w = w.copy()
        u.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "time", float(time))

    def __setattr__(self, name, value):
        raise AttributeError("SpinorField is immutable")

    @classmethod
    def from_components(cls, grid: Grid1D, f, h, time: float = 0.0) -> "SpinorField":
        f = np.asarray(f, dtype=np.complex128)
        h = np.asarray(h, dtype=np.complex128)
        return cls(grid, f + h, f - h, time)

    @property
    def f(self) -> np.ndarray:
        return (self.u + self.w) / 2

    @property
    def h(self) -> np.ndarray:
        return (self.u - self.w) / 2

    def total_probability(self) -> float:
        """Norm N = sum(|f|^2 + |h|^2) dz."""
        dens = 0.5 * (np.abs(self.u) ** 2 + np.abs(self.w) ** 2)
        return float(np.sum(dens)) * self.grid.dz

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.total_probability() - 1.0) <= tol

    def with_time(self, time: float) -> "SpinorField":
        return SpinorField(self.grid, self.u, self.w, time)


def inner(a: SpinorField, b: SpinorField) -> complex:
    """<a|b> = sum(conj(f_a) f_b + conj(h_a) h_b) dz."""
    if a.grid != b.grid:
        raise ValueError("states live on different grids")
    s = 0.5 * (np.vdot(a.u, b.u) + np.vdot(a.w, b.w))
    return complex(s * a.grid.dz)


def _positive_energy_ratio(k0: float, mass: float) -> float:
    # h/f for a positive-energy plane wave of the free system:
    # substituting f, h ~ exp(i(k z - E t)) into the coupled equations
    # gives h = -k f / (E + m) with E = sqrt(k^2 + m^2).
    if k0 == 0.0:
        return 0.0
    energy = math.hypot(k0, mass)
    return -k0 / (energy + mass)


def _assemble(grid: Grid1D, envelope: np.ndarray, spec: PacketSpec, time: float) -> SpinorField:
    phase = np.exp(1j * spec.k0 * grid.centers())
    f = envelope * phase
    h = _positive_energy_ratio(spec.k0, spec.mass) * f
    scale = math.sqrt((np.sum(np.abs(f) ** 2 + np.abs(h) ** 2)) * grid.dz)
    if scale == 0.0:
        raise ValueError("zero envelope")
    return SpinorField.from_components(grid, f / scale, h / scale, time)


def gaussian_packet(spec: PacketSpec, grid: Grid1D) -> SpinorField:
    """Positive-energy Gaussian with density ~ exp(-(z - z0)^2 / width^2)."""
    if spec.kind != "gaussian":
        raise ValueError("spec.kind must be 'gaussian'")
    # Tail mass cut off by the grid, from the normalized density.
    tail = 0.5 * (
        math.erfc((grid.z_max - spec.z0) / spec.width)
        + math.erfc((spec.z0 - grid.z_min) / spec.width)
    )
    if tail > NORM_TOL:
        raise TruncationError(
            f"grid [{grid.z_min}, {grid.z_max}] truncates {tail:.3e} of the packet"
        )
    z = grid.centers()
    envelope = np.exp(-((z - spec.z0) ** 2) / (2.0 * spec.width**2))
    return _assemble(grid, envelope, spec, 0.0)


def compact_packet(spec: PacketSpec, support: tuple[float, float], grid: Grid1D) -> SpinorField:
    """Smooth bump with exact zeros outside [z_l, z_r].

    The envelope is exp(-1/(1 - x^2)) in the rescaled coordinate
    x in (-1, 1), which decays faster than any power at both edges.
    """
    z_l, z_r = support
    if not z_l < z_r:
        raise ValueError("empty support")
    if z_l < grid.z_min or z_r > grid.z_max:
        raise GridError("support extends outside the grid")
    z = grid.centers()
    x = (2.0 * z - (z_l + z_r)) / (z_r - z_l)
    interior = np.abs(x) < 1.0
    envelope = np.zeros(grid.n_cells)
    envelope[interior] = np.exp(-1.0 / (1.0 - x[interior] ** 2))
    if not envelope.any():
        raise ValueError("support does not contain any cell center")
    return _assemble(grid, envelope, spec, 0.0)


def cut(state: SpinorField, Q: float, side: str) -> SpinorField:
    """Heaviside cut of the state at the boundary nearest to Q.

    'left' keeps cells with center < Q, 'right' the complement; the two
    halves partition the input cell by cell, so left + right reproduces
    it exactly.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if not state.grid.contains(Q):
        raise GridError(f"cut position {Q} outside the grid")
    k = state.grid.boundary_index(Q)
    keep = np.zeros(state.grid.n_cells, dtype=bool)
    if side == "left":
        keep[:k] = True
    else:
        keep[k:] = True
    return SpinorField(
        state.grid,
        np.where(keep, state.u, 0.0),
        np.where(keep, state.w, 0.0),
        state.time,
    )
