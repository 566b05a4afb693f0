"""Diameter-reducing partitions of point clouds in 4-dimensional l_p space.

Any finite cloud splits into at most 16 parts of strictly smaller l_p
diameter.  Three assignment rules share a canonical normalization (scale to
diameter 2, center deterministically) and the exponent picks the rule:

* p > 2 (including inf): orthant split of the centered bounding box.  Each
  orthant cell has diameter at most 4^(1/p) * tau against an original
  diameter of at least 2 * tau, so the ratio is bounded by 4^(1/p) / 2 < 1.
* 1 < p <= 2: sign cells of the scaled-Hadamard parallelotope.  The cloud is
  expressed in the parallelotope's own coordinates, where the 16 cells are
  the orthants of [-1, 1]^4; centering the functional ranges splits every
  diametral pair across cells.
* p = 1: the cross-polytope case.  Points inside the unit ball go to the 8
  pieces of the axis covering (shrink 3/4); points beyond a facet go to the
  spike region of the facet functional they exceed.  Opposite spikes can
  never both be hit by a diameter-2 cloud, so at most 12 parts are nonempty.

The engine emits a certificate (labels, per-part diameter witnesses, ratio);
``verify_partition`` recomputes everything through the diameter oracle and is
the source of truth for validity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .hadamard import hadamard4_circulant, map_from_scaled_hadamard
from .norms import GEOM_TOL, PNorm, as_cloud, diameter, row_pnorms

__all__ = [
    "METHOD_CUBE",
    "METHOD_HADAMARD",
    "METHOD_CROSS",
    "SLAB_NORMALS",
    "SlabRegion",
    "PartDiameter",
    "Normalization",
    "PartitionResult",
    "partition",
    "split_cube",
    "split_hadamard_cells",
    "split_crosspolytope",
    "verify_partition",
]

METHOD_CUBE = "cube"
METHOD_HADAMARD = "hadamard_cell"
METHOD_CROSS = "crosspolytope"

#: facet normals of the 4-dimensional cross-polytope, one per slab.  Rows
#: 0..3 have an even number of -1 entries, rows 4..7 an odd number; the even
#: ones bound the spike directions and the odd ones stay fixed under the
#: canonical translation.
SLAB_NORMALS = np.array(
    [[1, 1, 1, 1],
     [-1, -1, 1, 1],
     [1, -1, -1, 1],
     [-1, 1, -1, 1],
     [1, 1, 1, -1],
     [-1, 1, 1, 1],
     [1, -1, 1, 1],
     [1, 1, -1, 1]], dtype=np.int64)

#: axis-covering data for the unit cross-polytope (shrink 3/4, centers at
#: +-1/4 along each axis), reused for the p = 1 ball pieces
_CROSS_SHRINK = 0.75
_CROSS_CENTER = 0.25


@dataclass(frozen=True)
class SlabRegion:
    """Slab description of the region containing a normalized p = 1 cloud.

    ``offsets`` are the translate coefficients of the four even-parity slabs
    (slab i shifted by offsets[i] * normal), clamped to [-1/4, 1/4]; the four
    odd-parity slabs are centered by construction.
    """

    normals: np.ndarray
    offsets: np.ndarray


@dataclass(frozen=True)
class PartDiameter:
    """Diameter witness of one part; indices refer to the original cloud."""

    part: int
    value: float
    index_a: int
    index_b: int


@dataclass(frozen=True)
class Normalization:
    """Canonical frame used internally: x_normalized = scale * x + translation."""

    scale: float
    translation: np.ndarray


@dataclass(frozen=True)
class PartitionResult:
    method: str
    labels: np.ndarray
    part_diameters: tuple[PartDiameter, ...]
    ratio: float
    nonempty_parts: int
    normalization: Normalization
    warnings: tuple[str, ...]
    slab: SlabRegion | None = None


class PartitionError(ValueError):
    """A point could not be assigned; the cloud violates the normalization
    invariants (e.g. not actually of the claimed diameter)."""


def _degenerate(pts: np.ndarray, method: str) -> PartitionResult:
    n, dim = pts.shape
    labels = np.zeros(n, dtype=np.int64)
    parts = (PartDiameter(0, 0.0, 0, 0),) if n else ()
    return PartitionResult(method, labels, parts, 0.0, 1 if n else 0,
                           Normalization(1.0, np.zeros(dim)), ())


def _finalize(pts: np.ndarray, labels: np.ndarray, method: str, nm: PNorm,
              normalization: Normalization, warnings: tuple[str, ...],
              slab: SlabRegion | None = None) -> PartitionResult:
    total = diameter(pts, nm)
    parts = []
    max_part = 0.0
    for lab in np.unique(labels):
        idx = np.flatnonzero(labels == lab)
        w = diameter(pts[idx], nm)
        parts.append(PartDiameter(int(lab), w.value,
                                  int(idx[w.index_a]), int(idx[w.index_b])))
        max_part = max(max_part, w.value)
    ratio = 0.0 if total.value == 0.0 else max_part / total.value
    return PartitionResult(method, labels, tuple(parts), ratio, len(parts),
                           normalization, warnings, slab)


def partition(points, nm: PNorm) -> PartitionResult:
    """Partition a 4-dimensional cloud into at most 16 smaller-diameter parts.

    Dispatches on the exponent: p = 1 to the cross-polytope rule, 1 < p <= 2
    to the Hadamard cells, p > 2 (including inf) to the cube split.
    """
    pts = as_cloud(points, dim=4)
    if nm.p == 1.0:
        return split_crosspolytope(pts, nm)
    if nm.p <= 2.0:
        return split_hadamard_cells(pts, nm)
    return split_cube(pts, nm)


def split_cube(points, nm: PNorm, max_dim: int = 10) -> PartitionResult:
    """Orthant split of the centered bounding box; requires p > log2(dim).

    After centering the bounding box at the origin with half-width tau, each
    coordinate-sign cell is a box of side at most tau, hence of diameter at
    most dim^(1/p) * tau, while the cloud itself realizes a coordinate gap of
    2 * tau.  The regime condition makes dim^(1/p) < 2, so every part is
    strictly smaller.  Works in any dimension up to ``max_dim``.
    """
    pts = as_cloud(points)
    dim = pts.shape[1]
    if not 1 <= dim <= max_dim:
        raise ValueError(f"cube split exposed for dimensions 1..{max_dim}, got {dim}")
    if not nm.p > math.log2(dim):
        raise ValueError(
            f"cube split needs p > log2(dim) = {math.log2(dim):g}, got p = {nm}")
    if len(pts) <= 1:
        return _degenerate(pts, METHOD_CUBE)
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    center = 0.5 * (lo + hi)
    shifted = pts - center
    bits = (shifted < 0.0).astype(np.int64)  # exactly 0 goes to the positive side
    labels = bits @ (1 << np.arange(dim, dtype=np.int64))
    return _finalize(pts, labels, METHOD_CUBE, nm,
                     Normalization(1.0, -center), ())


def split_hadamard_cells(points, nm: PNorm) -> PartitionResult:
    """Sign-cell split in the scaled-Hadamard parallelotope frame, 1 < p <= 2.

    The cloud is scaled to diameter 2 and translated so the functional range
    along every parallelotope normal is centered; the cell coordinates are
    then the coordinates of g^(-1) x in [-1, 1]^4 and each point is labeled
    by their sign pattern (zero counts as positive).
    """
    pts = as_cloud(points, dim=4)
    if nm.is_inf or not 1.0 < nm.p <= 2.0:
        raise ValueError(f"hadamard cells need 1 < p <= 2, got p = {nm}")
    if len(pts) <= 1:
        return _degenerate(pts, METHOD_HADAMARD)
    total = diameter(pts, nm)
    if total.value == 0.0:
        return _degenerate(pts, METHOD_HADAMARD)
    scale = 2.0 / total.value
    scaled = pts * scale

    g = map_from_scaled_hadamard(hadamard4_circulant(), 4.0 ** (-1.0 / nm.p))
    dots = scaled @ g.matrix  # <x, u_i> with u_i the columns of g
    mids = 0.5 * (dots.min(axis=0) + dots.max(axis=0))
    translation = -(g.inverse.T @ mids)  # solves <t, u_i> = -mids_i

    warnings: list[str] = []
    slab_bound = 4.0 ** (1.0 - 2.0 / nm.p)
    overshoot = float(np.abs(dots - mids).max() - slab_bound)
    if overshoot > 1e-6 * slab_bound:
        # cannot happen for a correctly scaled cloud; keep the label rule total
        warnings.append(
            f"functional width exceeds the parallelotope bound by {overshoot:.3g}")

    cell = (dots - mids) * 4.0 ** (2.0 / nm.p - 1.0)
    bits = (cell < 0.0).astype(np.int64)
    labels = bits @ (1 << np.arange(4, dtype=np.int64))
    return _finalize(pts, labels, METHOD_HADAMARD, nm,
                     Normalization(scale, translation), tuple(warnings))


def split_crosspolytope(points, nm: PNorm, tol: float = GEOM_TOL) -> PartitionResult:
    """The p = 1 rule: 8 covering pieces inside the ball plus spike regions.

    After scaling to diameter 2 and centering the four odd-parity slab
    functionals, every point satisfies |<x, u>| <= 1 for those normals, so a
    point outside the unit ball must exceed one of the even-parity facet
    functionals; it is assigned to that spike (largest excess, ties to the
    lowest index).  Points inside the ball take the first covering piece
    containing them, in center order +e_1..+e_4, -e_1..-e_4.  Labels 0..7 are
    ball pieces, 8..11 positive spikes, 12..15 negative spikes; a diameter-2
    cloud can never occupy both spikes of one pair, so at most 12 parts are
    nonempty.
    """
    pts = as_cloud(points, dim=4)
    if nm.p != 1.0:
        raise ValueError(f"the cross-polytope split is the p = 1 rule, got p = {nm}")
    if len(pts) <= 1:
        return _degenerate(pts, METHOD_CROSS)
    total = diameter(pts, nm)
    if total.value == 0.0:
        return _degenerate(pts, METHOD_CROSS)
    scale = 2.0 / total.value
    scaled = pts * scale

    normals = SLAB_NORMALS.astype(float)
    fixed = normals[4:8]
    dots_fixed = scaled @ fixed.T
    mids = 0.5 * (dots_fixed.min(axis=0) + dots_fixed.max(axis=0))
    translation = fixed.T @ (-mids) / 4.0  # fixed^(-1) = fixed^T / 4
    x = scaled + translation

    warnings: list[str] = []
    fixed_excess = float(np.abs(x @ fixed.T).max() - 1.0)
    if fixed_excess > 10.0 * tol:
        warnings.append(
            f"centered slab functional exceeds 1 by {fixed_excess:.3g}")

    spike_dots = x @ normals[:4].T
    spike_mids = 0.5 * (spike_dots.min(axis=0) + spike_dots.max(axis=0))
    offsets = spike_mids / 4.0  # slab-translate coefficient: shift of <., u> is 4 * offset
    clamped = np.clip(offsets, -0.25, 0.25)
    if np.any(np.abs(offsets) > 0.25 + 1e-12):
        warnings.append("slab offsets clamped to [-1/4, 1/4]")
    slab = SlabRegion(SLAB_NORMALS.copy(), clamped)

    norms1 = np.abs(x).sum(axis=1)
    in_ball = norms1 <= 1.0 + tol
    labels = np.full(len(x), -1, dtype=np.int64)

    if in_ball.any():
        eye = np.eye(4)
        centers = _CROSS_CENTER * np.vstack([eye, -eye])
        dist = np.abs(x[in_ball][:, None, :] - centers[None, :, :]).sum(axis=2)
        # the <= 1 + tol band widens piece distances by at most tol
        contained = dist <= _CROSS_SHRINK + 2.0 * tol
        if not contained.any(axis=1).all():
            bad = int(np.flatnonzero(in_ball)[int(np.argmin(contained.any(axis=1)))])
            raise PartitionError(
                f"point {bad} lies in the unit ball but in no covering piece; "
                "the cloud violates the diameter-2 normalization invariants")
        labels[in_ball] = np.argmax(contained, axis=1)  # first containing piece

    outside = ~in_ball
    if outside.any():
        ev = spike_dots[outside]
        best = np.argmax(np.abs(ev), axis=1)  # largest excess, ties to lowest index
        vals = ev[np.arange(len(ev)), best]
        if not (np.abs(vals) > 1.0 + tol).all():
            bad = int(np.flatnonzero(outside)[int(np.argmin(np.abs(vals)))])
            raise PartitionError(
                f"point {bad} lies outside the unit ball but exceeds no facet "
                "functional; the cloud violates the diameter-2 normalization invariants")
        labels[outside] = 8 + best + 4 * (vals < 0.0)

    return _finalize(pts, labels, METHOD_CROSS, nm,
                     Normalization(scale, translation), tuple(warnings), slab)


def verify_partition(points, nm: PNorm, result: PartitionResult,
                     strict: float = 1e-12) -> tuple[bool, dict]:
    """Independent certificate check: recompute every part diameter.

    Returns (ok, report).  ``ok`` is true iff the recomputed ratio is
    strictly below 1 (margin ``strict``) or the original diameter is 0.
    Raises on labels that do not cover the cloud or fall out of range.
    """
    pts = as_cloud(points)
    labels = np.asarray(result.labels)
    if labels.shape != (len(pts),):
        raise ValueError("labels do not cover the point cloud")
    limit = 2 ** pts.shape[1] if result.method == METHOD_CUBE else 16
    if labels.size and (labels.min() < 0 or labels.max() >= limit):
        raise ValueError(f"label out of range [0, {limit})")

    total = diameter(pts, nm)
    max_part = 0.0
    part_values: dict[int, float] = {}
    for lab in np.unique(labels):
        w = diameter(pts[labels == lab], nm)
        part_values[int(lab)] = w.value
        max_part = max(max_part, w.value)
    ratio = 0.0 if total.value == 0.0 else max_part / total.value
    ok = total.value == 0.0 or ratio < 1.0 - strict
    report = {
        "original_diameter": total.value,
        "max_part_diameter": max_part,
        "ratio": ratio,
        "nonempty_parts": len(part_values),
        "part_values": part_values,
        "ratio_matches_engine": abs(ratio - result.ratio) <= 1e-9,
    }
    return ok, report
