"""Deterministic samplers and probe sets for l_p balls."""

from __future__ import annotations

import numpy as np

from .norms import PNorm, row_pnorms

__all__ = [
    "signs_from_indices",
    "sign_orbit",
    "boundary_points",
    "ball_points",
    "lattice_points",
]


def signs_from_indices(indices: np.ndarray, dim: int) -> np.ndarray:
    """Map enumeration indices to +-1 vectors; index 0 is the all-ones vector.

    Bit i of the index flips coordinate i to -1, so the enumeration order is
    fixed and ties resolved by "first index" are reproducible everywhere.
    """
    idx = np.asarray(indices, dtype=np.int64).reshape(-1)
    bits = (idx[:, None] >> np.arange(dim, dtype=np.int64)[None, :]) & 1
    return 1.0 - 2.0 * bits


def sign_orbit(dim: int) -> np.ndarray:
    """All 2^dim sign vectors, all-ones first."""
    return signs_from_indices(np.arange(1 << dim), dim)


def boundary_points(count: int, dim: int, nm: PNorm, rng: np.random.Generator) -> np.ndarray:
    """Pseudo-random points of unit p-norm: Gaussian directions rescaled.

    Not uniform in surface measure; good enough for falsification probes,
    where any counterexample found is conclusive.
    """
    z = rng.standard_normal((count, dim))
    norms = row_pnorms(z, nm)
    bad = norms <= 0.0
    if bad.any():
        z[bad] = 0.0
        z[bad, 0] = 1.0
        norms[bad] = 1.0
    return z / norms[:, None]


def ball_points(count: int, dim: int, nm: PNorm, rng: np.random.Generator) -> np.ndarray:
    """Points inside the unit p-ball: boundary directions times a radius."""
    x = boundary_points(count, dim, nm, rng)
    r = rng.random(count) ** (1.0 / dim)
    return x * r[:, None]


def lattice_points(dim: int, nm: PNorm, per_axis: int | None = None,
                   max_points: int = 70000) -> np.ndarray:
    """Odd uniform grid on [-1, 1]^dim filtered to the unit p-ball."""
    if per_axis is None:
        per_axis = {1: 41, 2: 21, 3: 11, 4: 9}.get(dim, 5)
    while per_axis > 3 and per_axis ** dim > max_points:
        per_axis -= 2
    if per_axis ** dim > max_points:
        return np.zeros((1, dim))
    axis = np.linspace(-1.0, 1.0, per_axis)
    grid = np.stack(np.meshgrid(*([axis] * dim), indexing="ij"), axis=-1).reshape(-1, dim)
    keep = row_pnorms(grid, nm) <= 1.0 + 1e-12
    return grid[keep]
