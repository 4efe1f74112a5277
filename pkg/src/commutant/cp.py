"""Rank-1 and CP (sum-of-rank-1) tensor forms.

A rank-1 order-m tensor is an outer product of m vectors; a CP form stores
one factor matrix per mode, column r of mode k being the k-th vector of the
r-th rank-1 term.  A symmetric CP form stores one vector and one weight per
term, every mode sharing the vector.

Factor-level operations (permuting factors, applying a matrix per mode)
commute with materialization; tests pin those diagrams down.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg
from .errors import (
    ArgumentError,
    DimensionError,
    DomainError,
    RankError,
    SymmetryError,
)
from .permutation import Permutation
from .tensor import DenseTensor, TensorLike, as_matrix, as_tensor

#: absolute bound on 2x2 unfolding minors for rank-1 certification of
#: unit-scale inputs
RANK1_MINOR_TOL = 1e-10
#: relative tolerance for symmetry probes
SYMMETRY_TOL = 1e-9
#: coordinates of a unit vector below this are treated as zero when picking
#: the leading coordinate
STRUCTURE_LEAD_TOL = 1e-12


def rank1(vectors: Sequence) -> DenseTensor:
    """Outer product of m vectors: entry (i_1, ..., i_m) is the product of
    the i_k-th coordinates.  Every vector must be nonzero."""
    vecs = [np.asarray(v, dtype=float) for v in vectors]
    if not vecs:
        raise ArgumentError("at least one vector is required")
    for v in vecs:
        if v.ndim != 1 or v.size < 1:
            raise DimensionError("factors must be nonempty vectors")
        if not v.any():
            raise DomainError("zero vector is not a rank-1 factor")
    out = np.array(1.0)
    for v in vecs:
        out = np.multiply.outer(out, v)
    return DenseTensor(out)


def sym_power(x, m: int) -> DenseTensor:
    """The m-fold symmetric outer power x^{⊗m} of a nonzero vector."""
    if m < 1:
        raise ArgumentError(f"power must be positive, got {m}")
    return rank1([x] * m)


@dataclass(frozen=True, eq=False)
class CpForm:
    """CP form with one n x R factor matrix per mode (R = rank, columns are
    factors).  Zero columns are rejected: every stored term is genuinely
    rank 1."""

    factors: tuple[np.ndarray, ...]

    def __post_init__(self):
        if not self.factors:
            raise ArgumentError("at least one factor matrix is required")
        first = self.factors[0]
        for f in self.factors:
            if f.ndim != 2:
                raise DimensionError("factor matrices must be 2-D")
            if f.shape[1] != first.shape[1]:
                raise DimensionError("all factor matrices must share a column count")
            if f.shape[1] < 1:
                raise ArgumentError("rank must be at least 1")
            if not np.all(f.any(axis=0)):
                raise DomainError("factor matrices must have no zero column")

    @property
    def m(self) -> int:
        return len(self.factors)

    @property
    def rank(self) -> int:
        return self.factors[0].shape[1]

    @property
    def extents(self) -> tuple[int, ...]:
        return tuple(f.shape[0] for f in self.factors)


def cp_form(factors: Sequence) -> CpForm:
    mats = []
    for f in factors:
        fm = as_matrix(f).copy()
        fm.flags.writeable = False
        mats.append(fm)
    return CpForm(tuple(mats))


@dataclass(frozen=True, eq=False)
class SymCpForm:
    """Symmetric CP form: terms weight_r * (vector_r)^{⊗m}."""

    m: int
    vectors: tuple[np.ndarray, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ArgumentError(f"order must be positive, got {self.m}")
        if not self.vectors or len(self.vectors) != len(self.weights):
            raise ArgumentError("need one weight per vector, at least one term")
        n = self.vectors[0].size
        for v in self.vectors:
            if v.ndim != 1 or v.size != n:
                raise DimensionError("vectors must share one length")
            if not v.any():
                raise DomainError("zero vector is not a rank-1 factor")


def sym_cp_form(m: int, vectors: Sequence, weights: Sequence[float]) -> SymCpForm:
    vecs = []
    for v in vectors:
        va = np.asarray(v, dtype=float).copy()
        va.flags.writeable = False
        vecs.append(va)
    return SymCpForm(int(m), tuple(vecs), tuple(float(w) for w in weights))


def materialize(cp: CpForm) -> DenseTensor:
    """Dense sum of the rank-1 terms."""
    out = np.zeros(cp.extents)
    for r in range(cp.rank):
        out += rank1([f[:, r] for f in cp.factors]).array
    return DenseTensor(out)


def materialize_sym(cp: SymCpForm) -> DenseTensor:
    out = np.zeros((cp.vectors[0].size,) * cp.m)
    for w, v in zip(cp.weights, cp.vectors):
        out += w * sym_power(v, cp.m).array
    return DenseTensor(out)


def permute_cp_factors(cp: CpForm, sigma: Permutation) -> CpForm:
    """Move the factor matrix of mode k to mode sigma(k), so that
    materializing commutes with the mode shuffle
    :func:`~commutant.tensor.permute_modes` by sigma."""
    if sigma.degree != cp.m:
        raise DimensionError(f"permutation degree {sigma.degree} != {cp.m} modes")
    inv = sigma.inverse()
    return CpForm(tuple(cp.factors[inv(k) - 1] for k in range(1, cp.m + 1)))


def is_symmetric(a: TensorLike, tol: float = SYMMETRY_TOL) -> bool:
    """Whether an order-m cubical tensor is invariant (to relative tolerance
    ``tol``) under every mode shuffle; adjacent transpositions suffice."""
    t = as_tensor(a)
    n = t.shape[0]
    if any(d != n for d in t.shape):
        return False
    scale = max(1.0, float(np.max(np.abs(t.array))))
    for k in range(t.order - 1):
        axes = list(range(t.order))
        axes[k], axes[k + 1] = axes[k + 1], axes[k]
        if np.max(np.abs(np.transpose(t.array, axes) - t.array)) > tol * scale:
            return False
    return True


def matrix_rank(mat, tol: float) -> int:
    """Rank as the number of elimination pivots exceeding ``tol``."""
    return linalg.rank(as_matrix(mat), tol)


def _mode1_unfold(t: DenseTensor) -> np.ndarray:
    return t.array.reshape(t.shape[0], -1, order="F")


def _minors_vanish(mat: np.ndarray, tol: float) -> bool:
    """All 2x2 minors of ``mat`` below ``tol`` in magnitude."""
    rows, cols = mat.shape
    if rows < 2 or cols < 2:
        return True
    # minor(r1 r2; c1 c2) over all pairs, vectorized per row pair
    for r1 in range(rows):
        for r2 in range(r1 + 1, rows):
            prod = np.multiply.outer(mat[r1], mat[r2])
            if np.max(np.abs(prod - prod.T)) > tol:
                return False
    return True


def extract_sym_rank1(a: TensorLike) -> tuple[float, np.ndarray]:
    """Recover (lambda, y) with ``a == lambda * y^{⊗m}`` and |y| = 1 from a
    symmetric rank-1 tensor.

    Canonical representative: for even m the leading nonzero coordinate of y
    is positive and lambda carries the sign; for odd m, lambda >= 0 takes
    precedence and the sign of y follows.

    Raises SymmetryError if the input is not symmetric, RankError if it is
    not rank 1 (all 2x2 minors of the mode-1 unfolding must vanish below
    1e-10; unit-scale inputs assumed).
    """
    t = as_tensor(a)
    n = t.shape[0]
    if any(d != n for d in t.shape):
        raise DimensionError(f"symmetric tensors are cubical, got shape {t.shape}")
    if not is_symmetric(t):
        raise SymmetryError("input is not symmetric")
    if not t.array.any():
        raise RankError("zero tensor has no rank-1 form")
    unfolding = _mode1_unfold(t)
    if not _minors_vanish(unfolding, RANK1_MINOR_TOL):
        raise RankError("2x2 minors of the mode-1 unfolding do not vanish")
    col = int(np.argmax(np.linalg.norm(unfolding, axis=0)))
    y = unfolding[:, col]
    y = y / np.linalg.norm(y)
    lead = int(np.argmax(np.abs(y) > STRUCTURE_LEAD_TOL))
    if y[lead] < 0:
        y = -y
    lam = float(np.dot(t.values, sym_power(y, t.order).values))
    if t.order % 2 == 1 and lam < 0:
        lam, y = -lam, -y
    return lam, y
