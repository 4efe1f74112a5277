"""The vec-permutation (commutation) matrix K_{p,q} and its calculus.

K_{p,q} is the pq x pq permutation matrix with K vec(X) = vec(Xᵀ) for every
p x q matrix X.  It is stored structurally as the row permutation it
performs, so building and applying it cost O(pq); the dense matrix is
materialized on demand.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, DimensionError, RangeError
from .permutation import Permutation
from .tensor import as_matrix


def _check_dims(p: int, q: int) -> None:
    if p < 1 or q < 1:
        raise ArgumentError(f"dimensions must be positive, got p={p}, q={q}")


@dataclass(frozen=True)
class CommutationMatrix:
    """K_{p,q} held as a permutation: row s has its 1 in column perm(s)."""

    p: int
    q: int
    perm: Permutation

    def dense(self) -> np.ndarray:
        size = self.p * self.q
        mat = np.zeros((size, size))
        for s in range(1, size + 1):
            mat[s - 1, self.perm(s) - 1] = 1.0
        return mat


def build_commutation(p: int, q: int) -> CommutationMatrix:
    """Build K_{p,q} structurally.

    Row s = j + (i-1)q (for i in 1..p, j in 1..q) has its 1 in column
    i + (j-1)p, which is exactly the index transposition behind
    K vec(X) = vec(Xᵀ).
    """
    _check_dims(p, q)
    images = []
    for s in range(1, p * q + 1):
        i = (s - 1) // q + 1
        j = (s - 1) % q + 1
        images.append(i + (j - 1) * p)
    return CommutationMatrix(p, q, Permutation(images))


def build_commutation_rank1(p: int, q: int) -> np.ndarray:
    """K_{p,q} as a sum of pq rank-1 terms (e_i ⊗ f_j)(f_j ⊗ e_i)ᵀ,
    with e_i in R^p and f_j in R^q.  Independent of :func:`build_commutation`;
    the two constructions must agree exactly.
    """
    _check_dims(p, q)
    size = p * q
    out = np.zeros((size, size))
    for i in range(p):
        for j in range(q):
            left = np.zeros(size)
            left[i * q + j] = 1.0  # e_i ⊗ f_j
            right = np.zeros(size)
            right[j * p + i] = 1.0  # f_j ⊗ e_i
            out += np.outer(left, right)
    return out


def apply(k: CommutationMatrix, x) -> np.ndarray:
    """K x without materializing K: entry s of the result is x[perm(s)]."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim != 1:
        raise DimensionError(f"expected a vector, got order {arr.ndim}")
    if arr.size != k.p * k.q:
        raise DimensionError(f"vector length {arr.size} != {k.p}*{k.q}")
    return arr[[k.perm(s) - 1 for s in range(1, arr.size + 1)]]


def block_to_flat(i: int, j: int, k: int, l: int, p: int, q: int) -> tuple[int, int]:
    """Map block coordinates (block (i,j), in-block (k,l)) of the p x q grid
    of q x p blocks to flat 1-based matrix coordinates (s, t)."""
    _check_dims(p, q)
    if not (1 <= i <= p and 1 <= j <= q and 1 <= k <= q and 1 <= l <= p):
        raise RangeError(f"block coordinates ({i},{j},{k},{l}) outside p={p}, q={q}")
    return (i - 1) * q + k, (j - 1) * p + l


def flat_to_block(s: int, t: int, p: int, q: int) -> tuple[int, int, int, int]:
    """Inverse of :func:`block_to_flat`."""
    _check_dims(p, q)
    if not (1 <= s <= p * q and 1 <= t <= p * q):
        raise RangeError(f"flat coordinates ({s},{t}) outside 1..{p * q}")
    i, k = (s - 1) // q + 1, (s - 1) % q + 1
    j, l = (t - 1) // p + 1, (t - 1) % p + 1
    return i, j, k, l


def det_commutation(p: int, q: int) -> int:
    """Determinant of K_{p,q}: the sign of its row permutation.

    For the square case this is (-1)^(p(p-1)/2); computed here from the
    stored permutation so the closed form stays a testable claim.
    """
    return build_commutation(p, q).perm.sign()


def trace_commutation(p: int) -> int:
    """Diagonal sum of K_{p,p}: the number of fixed points of its permutation."""
    k = build_commutation(p, p)
    return sum(1 for s in range(1, p * p + 1) if k.perm(s) == s)


def transpose_matrix(k: CommutationMatrix) -> CommutationMatrix:
    """K_{p,q}ᵀ, which equals K_{q,p}."""
    return CommutationMatrix(k.q, k.p, k.perm.inverse())


def conjugate_kron(a, b) -> np.ndarray:
    """A ⊗ B computed as K_{p,q} (B ⊗ A) K_{q,p} for square A (p x p) and
    B (q x q) — the two Kronecker orders are similar via commutation matrices.
    """
    am, bm = as_matrix(a), as_matrix(b)
    if am.shape[0] != am.shape[1] or bm.shape[0] != bm.shape[1]:
        raise DimensionError(f"both factors must be square, got {am.shape}, {bm.shape}")
    p, q = am.shape[0], bm.shape[0]
    kpq = build_commutation(p, q).dense()
    kqp = build_commutation(q, p).dense()
    return kpq @ np.kron(bm, am) @ kqp
