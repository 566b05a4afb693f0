"""Norms, diameters, and support functionals of finite-dimensional l_p spaces.

Everything else in the package is measured through this module: the exponent
type ``PNorm`` (with its dual), point-cloud validation, exact pairwise
diameters with attaining witnesses, support functionals, and functional
widths along a direction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GEOM_TOL",
    "PNorm",
    "DiameterWitness",
    "as_cloud",
    "pnorm",
    "row_pnorms",
    "diameter",
    "diameter_bruteforce",
    "support",
    "support_maximizer",
    "width_functional",
]

#: relative tolerance used by geometric membership / inclusion predicates
GEOM_TOL = 1e-9


@dataclass(frozen=True)
class PNorm:
    """An l_p exponent together with its dual q, where 1/p + 1/q = 1.

    Infinity is represented by ``math.inf`` (the dual of p = 1).  Comparisons
    on ``p`` are exact float comparisons; no epsilon is applied to the
    exponent itself.
    """

    p: float

    def __post_init__(self) -> None:
        p = float(self.p)
        if math.isnan(p) or p < 1.0:
            raise ValueError(f"norm exponent must satisfy p >= 1, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @classmethod
    def parse(cls, value) -> "PNorm":
        """Build a PNorm from a number or the string ``"inf"``.

        ``"inf"`` is the only accepted spelling for the maximum norm; other
        non-finite strings are rejected.
        """
        if isinstance(value, PNorm):
            return value
        if isinstance(value, str):
            if value == "inf":
                return cls(math.inf)
            try:
                parsed = float(value)
            except ValueError:
                raise ValueError(f"cannot parse norm exponent {value!r}") from None
            if not math.isfinite(parsed):
                raise ValueError('p = infinity must be spelled "inf"')
            return cls(parsed)
        return cls(float(value))

    @property
    def is_inf(self) -> bool:
        return math.isinf(self.p)

    @property
    def q(self) -> float:
        """Dual exponent (q = inf for p = 1 and q = 1 for p = inf)."""
        if self.p == 1.0:
            return math.inf
        if self.is_inf:
            return 1.0
        return self.p / (self.p - 1.0)

    def dual(self) -> "PNorm":
        return PNorm(self.q)

    def __str__(self) -> str:
        return "inf" if self.is_inf else format(self.p, "g")


@dataclass(frozen=True)
class DiameterWitness:
    """Largest pairwise distance of a cloud and one point pair attaining it.

    Degenerate clouds (one point or none) have value 0 and equal indices.
    """

    value: float
    index_a: int
    index_b: int


def as_cloud(points, dim: int | None = None) -> np.ndarray:
    """Validate a point cloud as a float array of shape (n_points, dim).

    Rows are points.  Raises ``ValueError`` on ragged input, non-finite
    coordinates, or a dimension mismatch.  An empty input needs an explicit
    ``dim`` unless it already carries a (0, d) shape.
    """
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        if pts.ndim == 2:
            width = pts.shape[1]
        elif dim is not None:
            width = dim
        else:
            raise ValueError("cannot infer the dimension of an empty cloud; pass dim=")
        pts = pts.reshape(0, width)
    if pts.ndim != 2:
        raise ValueError(f"a point cloud must be a 2-d array of points, got shape {pts.shape}")
    if dim is not None and pts.shape[1] != dim:
        raise ValueError(f"expected {dim}-dimensional points, got {pts.shape[1]}-dimensional")
    if not np.isfinite(pts).all():
        raise ValueError("point cloud contains non-finite coordinates")
    return pts


def pnorm(x, nm: PNorm) -> float:
    """l_p norm of a vector: (sum |x_i|^p)^(1/p), or max |x_i| for p = inf."""
    a = np.abs(np.asarray(x, dtype=float))
    if a.size == 0:
        return 0.0
    if nm.is_inf:
        return float(a.max())
    if nm.p == 1.0:
        return float(a.sum())
    if nm.p == 2.0:
        return float(np.sqrt(np.square(a).sum()))
    return float(np.power(a, nm.p).sum() ** (1.0 / nm.p))


def row_pnorms(m: np.ndarray, nm: PNorm) -> np.ndarray:
    """l_p norms along the last axis (vectorized companion of :func:`pnorm`)."""
    a = np.abs(np.asarray(m, dtype=float))
    if nm.is_inf:
        return a.max(axis=-1)
    if nm.p == 1.0:
        return a.sum(axis=-1)
    if nm.p == 2.0:
        return np.sqrt(np.square(a).sum(axis=-1))
    return np.power(a, nm.p).sum(axis=-1) ** (1.0 / nm.p)


def diameter(points, nm: PNorm, block: int = 128) -> DiameterWitness:
    """Exact l_p diameter by a full pairwise scan, with an attaining pair.

    O(n^2), vectorized over row blocks; the witness is the first maximal
    pair in row-major order, so the result is deterministic.
    """
    pts = np.asarray(points, dtype=float)
    if pts.size == 0 or len(pts) <= 1:
        return DiameterWitness(0.0, 0, 0)
    pts = as_cloud(pts)
    n = len(pts)
    best_v, best_a, best_b = -1.0, 0, 0
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        diff = pts[lo:hi, None, :] - pts[None, lo:, :]
        dist = row_pnorms(diff, nm)
        flat = int(np.argmax(dist))
        i, j = divmod(flat, dist.shape[1])
        v = float(dist[i, j])
        if v > best_v:
            best_v, best_a, best_b = v, lo + i, lo + j
    return DiameterWitness(best_v, best_a, best_b)


def diameter_bruteforce(points, nm: PNorm) -> DiameterWitness:
    """Reference diameter oracle: plain double loop over scalar arithmetic.

    Kept independent of the vectorized path on purpose; tests compare the
    two implementations against each other.
    """
    rows = [tuple(float(c) for c in row) for row in points]
    if len(rows) <= 1:
        return DiameterWitness(0.0, 0, 0)
    p = nm.p
    best_v, best_a, best_b = -1.0, 0, 0
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if nm.is_inf:
                d = max(abs(a - b) for a, b in zip(rows[i], rows[j]))
            elif p == 1.0:
                d = sum(abs(a - b) for a, b in zip(rows[i], rows[j]))
            else:
                d = sum(abs(a - b) ** p for a, b in zip(rows[i], rows[j])) ** (1.0 / p)
            if d > best_v:
                best_v, best_a, best_b = d, i, j
    return DiameterWitness(best_v, best_a, best_b)


def support(u, nm: PNorm) -> float:
    """Support functional of the unit l_p ball at u, i.e. ||u||_q."""
    return pnorm(u, nm.dual())


def support_maximizer(u, nm: PNorm) -> np.ndarray:
    """A unit-p-norm point x attaining <x, u> = ||u||_q exactly.

    For p = 1 a signed coordinate vector at the largest |u_i|; for p = inf
    the sign vector of u; otherwise x_i proportional to sign(u_i)|u_i|^(q-1),
    rescaled to unit p-norm.
    """
    u = np.asarray(u, dtype=float)
    if not u.any():
        x = np.zeros(u.shape)
        x.reshape(-1)[0] = 1.0
        return x
    if nm.p == 1.0:
        j = int(np.argmax(np.abs(u)))
        x = np.zeros(u.shape)
        x[j] = 1.0 if u[j] >= 0 else -1.0
        return x
    if nm.is_inf:
        return np.where(u >= 0, 1.0, -1.0)
    w = np.sign(u) * np.abs(u) ** (nm.q - 1.0)
    return w / pnorm(w, nm)


def width_functional(points, u) -> tuple[float, float, float]:
    """Range of the linear functional <., u> over a cloud: (min, max, midpoint)."""
    pts = as_cloud(points)
    if len(pts) == 0:
        raise ValueError("functional width is undefined for an empty cloud")
    dots = pts @ np.asarray(u, dtype=float)
    lo, hi = float(dots.min()), float(dots.max())
    return lo, hi, 0.5 * (lo + hi)
