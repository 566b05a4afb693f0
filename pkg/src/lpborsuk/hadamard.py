"""Hadamard matrices and the scaled block maps that sandwich cubes in l_p balls.

The constructions are exact: sign matrices are integer arrays, orthogonality
is checked in integer arithmetic, and scaled-Hadamard maps carry a closed-form
inverse (plus an exact rational scale whenever n^(-1/p) is rational).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .norms import PNorm

__all__ = [
    "MAX_MAP_DIM",
    "sylvester",
    "is_hadamard",
    "hadamard4_circulant",
    "LinearMap",
    "map_from_matrix",
    "map_from_scaled_hadamard",
    "identity_map",
    "block_diag_map",
    "sandwich_map",
    "sandwich_map_padded",
]

MAX_SYLVESTER_EXPONENT = 20
#: dimension guard shared by the map builders (vertex enumeration is 2^n)
MAX_MAP_DIM = 20
COND_WARN = 1e12


def sylvester(k: int) -> np.ndarray:
    """Order 2^k sign matrix from the doubling construction [[H, H], [H, -H]]."""
    if not 0 <= k <= MAX_SYLVESTER_EXPONENT:
        raise ValueError(f"sylvester exponent must be in [0, {MAX_SYLVESTER_EXPONENT}], got {k}")
    h = np.ones((1, 1), dtype=np.int64)
    for _ in range(k):
        h = np.block([[h, h], [h, -h]])
    return h


def _as_sign_matrix(m) -> np.ndarray:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    mi = np.asarray(m, dtype=np.int64)
    if not np.array_equal(mi, m) or not np.isin(mi, (-1, 1)).all():
        raise ValueError("matrix entries must all be +1 or -1")
    return mi


def is_hadamard(m) -> bool:
    """Exact integer check that a +-1 matrix has mutually orthogonal rows."""
    mi = _as_sign_matrix(m)
    n = mi.shape[0]
    return bool(np.array_equal(mi @ mi.T, n * np.eye(n, dtype=np.int64)))


def hadamard4_circulant() -> np.ndarray:
    """The order-4 Hadamard matrix whose rows cyclically shift (1, -1, 1, 1).

    Its columns are the four sign patterns with an even number of -1 entries
    (up to sign), which is what makes it the natural frame for the
    parallelotope cells of the partition engine.
    """
    return np.array(
        [[1, -1, 1, 1],
         [1, 1, -1, 1],
         [1, 1, 1, -1],
         [-1, 1, 1, 1]], dtype=np.int64)


@dataclass(frozen=True)
class LinearMap:
    """Invertible square map with its inverse computed once.

    When the matrix is a rationally scaled sign matrix, ``scale_exact`` and
    ``sign_part`` describe it exactly (matrix == float(scale_exact) *
    sign_part); exact-arithmetic identity checks use those instead of the
    float entries.
    """

    matrix: np.ndarray
    inverse: np.ndarray
    scale_exact: Fraction | None = None
    sign_part: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def apply(self, x) -> np.ndarray:
        return self.matrix @ np.asarray(x, dtype=float)

    def scaled(self, c: float) -> "LinearMap":
        """The map c * g (inverse rescaled accordingly; exact data dropped)."""
        if c == 0:
            raise ValueError("scale factor must be nonzero")
        return LinearMap(self.matrix * c, self.inverse / c)


def map_from_matrix(m) -> LinearMap:
    """Wrap a general invertible matrix; warns when badly conditioned."""
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    try:
        inv = np.linalg.inv(m)
    except np.linalg.LinAlgError:
        raise ValueError("matrix is singular") from None
    cond = np.linalg.cond(m)
    if not np.isfinite(cond) or cond > COND_WARN:
        warnings.warn(f"ill-conditioned linear map (cond = {cond:.3g})", RuntimeWarning,
                      stacklevel=2)
    return LinearMap(m, inv)


def map_from_scaled_hadamard(h, scale: float,
                             scale_exact: Fraction | None = None) -> LinearMap:
    """The map scale * H with its closed-form inverse H^T / (scale * order)."""
    hi = _as_sign_matrix(h)
    if not is_hadamard(hi):
        raise ValueError("matrix fails the Hadamard orthogonality check")
    n = hi.shape[0]
    matrix = float(scale) * hi.astype(float)
    inverse = hi.T.astype(float) / (float(scale) * n)
    return LinearMap(matrix, inverse, scale_exact=scale_exact, sign_part=hi)


def identity_map(n: int) -> LinearMap:
    eye = np.eye(n)
    return LinearMap(eye, eye.copy())


def block_diag_map(blocks) -> LinearMap:
    """Block-diagonal composition; the inverse is block-diagonal too."""
    blocks = list(blocks)
    if not blocks:
        raise ValueError("need at least one block")
    n = sum(b.dim for b in blocks)
    matrix = np.zeros((n, n))
    inverse = np.zeros((n, n))
    at = 0
    for b in blocks:
        matrix[at:at + b.dim, at:at + b.dim] = b.matrix
        inverse[at:at + b.dim, at:at + b.dim] = b.inverse
        at += b.dim
    return LinearMap(matrix, inverse)


def _exact_reciprocal_root(n: int, nm: PNorm) -> Fraction | None:
    """n^(-1/p) as a Fraction when 1/p in {0, 1/2, 1} makes it rational."""
    if nm.is_inf:
        return Fraction(1)
    if nm.p == 1.0:
        return Fraction(1, n)
    if nm.p == 2.0:
        r = math.isqrt(n)
        if r * r == n:
            return Fraction(1, r)
    return None


def sandwich_map(n: int, nm: PNorm) -> LinearMap:
    """Linear map g whose cube image nests between l_p balls.

    For n a power of two, g = n^(-1/p) H_n with H_n the Sylvester matrix;
    otherwise the dimension splits as n = 2^k + t with 2^k the largest power
    of two below n, and g is the block diagonal of the two sub-maps.  The
    rows of g^(-1) all have dual norm exactly 1, so the unit p-ball sits
    inside g C_n with no slack.
    """
    if not 1 <= n <= MAX_MAP_DIM:
        raise ValueError(f"dimension must be in [1, {MAX_MAP_DIM}], got {n}")
    if not 1.0 <= nm.p <= 2.0:
        raise ValueError(f"the scaled-Hadamard construction needs 1 <= p <= 2, got p = {nm}")
    if n & (n - 1) == 0:
        k = n.bit_length() - 1
        scale = n ** (-1.0 / nm.p)
        return map_from_scaled_hadamard(sylvester(k), scale, _exact_reciprocal_root(n, nm))
    head = 1 << (n.bit_length() - 1)
    return block_diag_map([sandwich_map(head, nm), sandwich_map(n - head, nm)])


def sandwich_map_padded(k: int, j: int, nm: PNorm, hadamard_matrix) -> LinearMap:
    """Dimension 4k + j map: identity block of size j over (4k)^(-1/p) H_4k.

    Accepts any order-4k Hadamard matrix (verified), so non-Sylvester orders
    can be supplied by the caller.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if not 0 <= j < 4:
        raise ValueError(f"j must be in [0, 4), got {j}")
    if not 1.0 <= nm.p <= 2.0:
        raise ValueError(f"the scaled-Hadamard construction needs 1 <= p <= 2, got p = {nm}")
    hi = _as_sign_matrix(hadamard_matrix)
    if not is_hadamard(hi):
        raise ValueError("hadamard_matrix fails the orthogonality check")
    if hi.shape[0] != 4 * k:
        raise ValueError(f"hadamard_matrix has order {hi.shape[0]}, expected {4 * k}")
    if 4 * k + j > MAX_MAP_DIM:
        raise ValueError(f"dimension {4 * k + j} exceeds the guard {MAX_MAP_DIM}")
    scale = (4 * k) ** (-1.0 / nm.p)
    core = map_from_scaled_hadamard(hi, scale, _exact_reciprocal_root(4 * k, nm))
    if j == 0:
        return core
    return block_diag_map([identity_map(j), core])
