"""Uniform 1D spatial grids.

Cell centers sit at z_i = z_min + (i + 1/2) dz; cell boundaries at
z_min + k dz, k = 0..n_cells.  All region bookkeeping elsewhere in the
package is done with integer boundary indices so that partitions of the
grid are exact.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class GridError(ValueError):
    """Invalid grid geometry."""


@dataclass(frozen=True)
class Grid1D:
    z_min: float
    z_max: float
    n_cells: int
    dz: float

    def centers(self) -> np.ndarray:
        return self.z_min + (np.arange(self.n_cells) + 0.5) * self.dz

    def boundary(self, k: int) -> float:
        """Position of the k-th cell boundary (k in 0..n_cells)."""
        return self.z_min + k * self.dz

    def boundary_index(self, z: float) -> int:
        """Nearest cell-boundary index to z, clipped to the grid."""
        k = round((z - self.z_min) / self.dz)
        return min(max(k, 0), self.n_cells)

    def snap(self, z: float) -> float:
        """z snapped to the nearest cell boundary."""
        return self.boundary(self.boundary_index(z))

    def contains(self, z: float) -> bool:
        return self.z_min <= z <= self.z_max


def make_grid(z_min: float, z_max: float, n_cells: int) -> Grid1D:
    if not z_max > z_min:
        raise GridError(f"need z_max > z_min, got [{z_min}, {z_max}]")
    if n_cells < 2:
        raise GridError(f"need n_cells >= 2, got {n_cells}")
    dz = (z_max - z_min) / n_cells
    if not dz > 0:
        raise GridError("degenerate cell width")
    return Grid1D(float(z_min), float(z_max), int(n_cells), dz)
