"""Dense-matrix helpers shared by every module.

Everything here works on plain float64 numpy arrays, treats inputs as
immutable values, and returns freshly allocated results.  Comparisons use
the elementwise max-abs norm throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeMismatch, SingularMatrix


@dataclass(frozen=True)
class Tolerance:
    """Relative/absolute tolerance pair used by all approximate checks."""

    rel: float = 1e-9
    abs: float = 1e-12

    def __post_init__(self):
        if not (self.rel > 0.0 and self.abs > 0.0):
            raise ValueError("tolerance components must be positive")

    def bound(self, scale: float) -> float:
        return self.abs + self.rel * scale


DEFAULT_TOL = Tolerance()


def as_array(a, shape=None, dtype=float) -> np.ndarray:
    """Copy ``a`` into a read-only float array, checking shape and finiteness."""
    out = np.array(a, dtype=dtype)
    if shape is not None and out.shape != tuple(shape):
        raise ShapeMismatch(f"expected shape {tuple(shape)}, got {out.shape}")
    if not np.all(np.isfinite(out)):
        raise ValueError("array contains non-finite entries")
    out.setflags(write=False)
    return out


def max_norm(a) -> float:
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.max(np.abs(a)))


def approx_eq(a, b, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Max-norm closeness: ||a - b|| <= abs + rel * max(||a||, ||b||)."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ShapeMismatch(f"operand shapes differ: {a.shape} vs {b.shape}")
    return max_norm(a - b) <= tol.bound(max(max_norm(a), max_norm(b)))


def invert(m, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Inverse of a square matrix, rejecting near-singular input.

    The condition estimate is sigma_max / sigma_min; anything above
    1 / tol.rel raises SingularMatrix.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeMismatch(f"expected a square matrix, got {m.shape}")
    sigma = np.linalg.svd(m, compute_uv=False)
    if sigma[-1] <= 0.0 or sigma[0] / sigma[-1] > 1.0 / tol.rel:
        raise SingularMatrix(f"condition estimate exceeds {1.0 / tol.rel:g}")
    return np.linalg.inv(m)


def null_space(m, tol: Tolerance = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the numerical kernel of ``m``.

    Singular directions with sigma <= tol.rel * sigma_max are kept, so the
    returned vectors satisfy ||m v|| <= tol.rel * ||m|| in the 2-norm.
    Returns an empty list for numerically full column rank.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2:
        raise ShapeMismatch(f"expected a matrix, got shape {m.shape}")
    _, sigma, vt = np.linalg.svd(m)
    ncols = m.shape[1]
    smax = sigma[0] if sigma.size else 0.0
    kept = []
    for i in range(ncols):
        s = sigma[i] if i < sigma.size else 0.0
        if s <= tol.rel * smax:
            kept.append(vt[i].copy())
    return kept


def matrix_rank(m, tol: Tolerance = DEFAULT_TOL) -> int:
    """Numerical rank with the same relative threshold as null_space."""
    m = np.asarray(m, dtype=float)
    sigma = np.linalg.svd(m, compute_uv=False)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.sum(sigma > tol.rel * sigma[0]))
