"""Shared fixtures and randomized-configuration helpers."""
from __future__ import annotations

import numpy as np
import pytest

import diraclab as dl


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)


def random_setup(rng, n_cells_lo=2000, n_cells_hi=8000):
    """One randomized (grid, packet, potential, mass) configuration.

    The packet has exact compact support well inside the grid, so
    support-based causality checks start from a sharp interval and the
    boundary guard never trips within the step budgets used in tests.
    """
    n_cells = int(rng.integers(n_cells_lo, n_cells_hi + 1))
    half = float(rng.uniform(50.0, 150.0))
    grid = dl.make_grid(-half, half, n_cells)
    mass = float(rng.uniform(0.0, 2.0))
    width = float(rng.uniform(0.08, 0.25)) * half
    z0 = float(rng.uniform(-0.5, -0.25)) * half
    spec = dl.PacketSpec(
        "compact_bump",
        z0=z0,
        width=width,
        k0=float(rng.uniform(-2.0, 2.0)),
        mass=max(mass, 1e-12),
    )
    state = dl.compact_packet(spec, (z0 - width, z0 + width), grid)
    v0 = float(rng.uniform(0.0, 8.0))
    z_on = float(rng.uniform(-0.1, 0.1)) * half
    z_off = z_on + float(rng.uniform(0.05, 0.3)) * half
    potential = dl.rectangular_barrier(grid, v0, z_on, z_off,
                                       smoothing=float(rng.uniform(0.0, 2.0)) * grid.dz)
    return grid, state, potential, mass


def safe_step_budget(grid, state, fraction=0.8):
    """Steps before the packet's support can reach either grid edge."""
    sup = dl.support(state)
    room = min(sup.z_lo - grid.z_min, grid.z_max - sup.z_hi)
    return max(1, int(fraction * room / grid.dz))
