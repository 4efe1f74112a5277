"""Small dense linear algebra by Gaussian elimination with partial pivoting.

Deterministic and dependency-free on purpose: determinant, inverse, and rank
each expose an explicit pivot threshold instead of inheriting one from a
backend.  Matrices at this scale are tiny, so O(n^3) elimination is plenty.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, SingularMatrixError

#: a pivot smaller than this makes a matrix singular for inversion purposes
INVERSE_PIVOT_TOL = 1e-10
#: determinant magnitude below this is reported as exactly zero
DET_SINGULAR_TOL = 1e-12


def _square(mat) -> np.ndarray:
    arr = np.array(mat, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def det(mat) -> float:
    """Determinant via LU with partial pivoting; snaps |det| < 1e-12 to 0.0."""
    a = _square(mat)
    n = a.shape[0]
    sign = 1.0
    for col in range(n):
        piv = col + int(np.argmax(np.abs(a[col:, col])))
        if a[piv, col] == 0.0:
            return 0.0
        if piv != col:
            a[[col, piv]] = a[[piv, col]]
            sign = -sign
        a[col + 1 :, col:] -= np.outer(a[col + 1 :, col] / a[col, col], a[col, col:])
    value = sign * float(np.prod(np.diagonal(a)))
    return 0.0 if abs(value) < DET_SINGULAR_TOL else value


def inv(mat, pivot_tol: float = INVERSE_PIVOT_TOL) -> np.ndarray:
    """Inverse via Gauss-Jordan; raises SingularMatrixError on a tiny pivot."""
    a = _square(mat)
    n = a.shape[0]
    aug = np.hstack([a, np.eye(n)])
    for col in range(n):
        piv = col + int(np.argmax(np.abs(aug[col:, col])))
        if abs(aug[piv, col]) < pivot_tol:
            raise SingularMatrixError(
                f"pivot {abs(aug[piv, col]):.3e} below threshold {pivot_tol:g}"
            )
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] /= aug[col, col]
        for row in range(n):
            if row != col and aug[row, col] != 0.0:
                aug[row] -= aug[row, col] * aug[col]
    return aug[:, n:]


def rank(mat, tol: float) -> int:
    """Number of elimination pivots exceeding ``tol`` (absolute)."""
    a = np.array(mat, dtype=float)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got shape {a.shape}")
    rows, cols = a.shape
    r = 0
    for col in range(cols):
        if r == rows:
            break
        piv = r + int(np.argmax(np.abs(a[r:, col])))
        if abs(a[piv, col]) <= tol:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r + 1 :, col:] -= np.outer(a[r + 1 :, col] / a[r, col], a[r, col:])
        r += 1
    return r
