"""Commutation tensors and their generalizations.

Three constructions live here:

* :class:`CommutationTensor4` — the order-4 tensor that performs matrix
  transposition under a trailing-pair contraction.  For an m x n argument it
  has shape (n, m, m, n), and flattening its leading index pair against its
  trailing pair reproduces the commutation matrix K_{m,n}.
* :class:`Gct` — a generalized commutation tensor of order 2m built from m
  square generator matrices; its entries are products
  ``gen_1[i_1, j_1] * ... * gen_m[i_m, j_m]``.  With all generators equal to
  one permutation matrix these form a group under :func:`gct_multiply`.
* :class:`ModePermTensor` — the order-2m tensor whose action under
  :func:`~commutant.tensor.mul_2m_on_m` shuffles the modes of an order-m
  tensor by a permutation of the mode positions (not of the entries).

The acting orientation is fixed package-wide: an order-2m tensor acts on the
LEFT, ``mul_2m_on_m(dense(T), a)``, contracting T's trailing m modes against
all modes of ``a``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ArgumentError, DimensionError, DomainError, PreconditionError
from .permutation import Permutation
from .tensor import (
    DenseTensor,
    TensorLike,
    _even_order_cubic,
    as_matrix,
    as_tensor,
    balance_unfold,
    mul_2m,
)

#: entries of a permutation-structured result match 0/1 to this tolerance
STRUCTURE_TOL = 1e-12
#: tolerance for the mutual-inverse precondition of check_nonneg_inverse
INVERSE_CHECK_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class CommutationTensor4:
    """Order-4 transpose tensor for m x n arguments; backing shape (n, m, m, n)."""

    m: int
    n: int
    backing: DenseTensor


def build_ctensor(m: int, n: int) -> CommutationTensor4:
    """Entry (i, j, k, l) is 1 exactly when j = k and i = l
    (i, l in 1..n; j, k in 1..m), else 0.
    """
    if m < 1 or n < 1:
        raise ArgumentError(f"dimensions must be positive, got m={m}, n={n}")
    arr = np.zeros((n, m, m, n))
    for i in range(n):
        for j in range(m):
            arr[i, j, j, i] = 1.0
    return CommutationTensor4(m, n, DenseTensor(arr))


def tensor_transpose(kt: CommutationTensor4, x) -> np.ndarray:
    """Transpose an m x n matrix by contracting it against the tensor's
    trailing index pair; returns the n x m transpose."""
    xm = as_matrix(x)
    if xm.shape != (kt.m, kt.n):
        raise DimensionError(f"expected an {kt.m} x {kt.n} matrix, got {xm.shape}")
    return np.tensordot(kt.backing.array, xm, axes=([2, 3], [0, 1]))


def ctensor_flatten(kt: CommutationTensor4) -> np.ndarray:
    """Pair modes (1,2) as rows and (3,4) as columns, first mode fastest.
    The result is the commutation matrix K_{m,n}."""
    nm = kt.n * kt.m
    return kt.backing.array.reshape(nm, nm, order="F").copy()


def ctensor_power(exponent: int, n: int) -> DenseTensor:
    """The exponent-fold product of the square-case (n x n) transpose tensor
    with itself.  Powers collapse: every odd power equals the tensor itself
    and every even power equals its square (the identity element)."""
    if exponent < 1:
        raise ArgumentError(f"exponent must be positive, got {exponent}")
    base = build_ctensor(n, n).backing
    out = base
    for _ in range(exponent - 1):
        out = mul_2m(out, base)
    return out


@dataclass(frozen=True, eq=False)
class Gct:
    """Generalized commutation tensor: m generator matrices, each n x n.

    The dense form is the order-2m tensor with entries
    ``prod_k generators[k][i_k, j_k]``.
    """

    m: int
    n: int
    generators: tuple[np.ndarray, ...]


def build_gct(generators) -> Gct:
    gens = []
    for g in generators:
        gm = as_matrix(g)
        if gm.shape[0] != gm.shape[1]:
            raise DimensionError(f"generators must be square, got {gm.shape}")
        gm = gm.copy()
        gm.flags.writeable = False
        gens.append(gm)
    if not gens:
        raise ArgumentError("at least one generator is required")
    n = gens[0].shape[0]
    if any(g.shape[0] != n for g in gens):
        raise DimensionError("all generators must have the same size")
    return Gct(len(gens), n, tuple(gens))


def gct_from_permutation(pi: Permutation, m: int) -> Gct:
    """The group-case tensor: m copies of the permutation matrix of pi."""
    if m < 1:
        raise ArgumentError(f"m must be positive, got {m}")
    return build_gct([pi.matrix()] * m)


def gct_identity(m: int, n: int) -> Gct:
    return build_gct([np.eye(n)] * m)


def gct_dense(g: Gct) -> DenseTensor:
    arr = np.array(1.0)
    for gen in g.generators:
        arr = np.multiply.outer(arr, gen)
    # axes are now (i_1, j_1, i_2, j_2, ...); regroup to (i_1..i_m, j_1..j_m)
    axes = list(range(0, 2 * g.m, 2)) + list(range(1, 2 * g.m, 2))
    return DenseTensor(np.transpose(arr, axes))


def gct_multiply(a: Gct, b: Gct) -> Gct:
    """Product in the order-2m algebra, computed slotwise: generator k of the
    result is ``a.generators[k] @ b.generators[k]``.  Matches
    :func:`~commutant.tensor.mul_2m` on the dense forms."""
    if (a.m, a.n) != (b.m, b.n):
        raise DimensionError(f"size mismatch: ({a.m},{a.n}) vs ({b.m},{b.n})")
    return build_gct([ga @ gb for ga, gb in zip(a.generators, b.generators)])


def gct_inverse(g: Gct) -> Gct:
    """Slotwise inverse; raises SingularMatrixError if any generator is
    singular at the pivot threshold."""
    return build_gct([linalg.inv(gen) for gen in g.generators])


@dataclass(frozen=True)
class ModePermTensor:
    """Order-2m tensor acting as a mode shuffle by tau (a permutation of the
    m mode positions): entry (i_1..i_m, j_1..j_m) is 1 exactly when
    j_k = i_{tau(k)} for every k."""

    m: int
    n: int
    tau: Permutation


def build_mode_perm_tensor(tau: Permutation, n: int) -> ModePermTensor:
    if n < 1:
        raise ArgumentError(f"n must be positive, got {n}")
    return ModePermTensor(tau.degree, n, tau)


def mode_perm_dense(t: ModePermTensor) -> DenseTensor:
    m, n = t.m, t.n
    arr = np.zeros((n,) * (2 * m))
    for i in itertools.product(range(n), repeat=m):
        j = tuple(i[t.tau(k) - 1] for k in range(1, m + 1))
        arr[i + j] = 1.0
    return DenseTensor(arr)


def is_pair_symmetric(a: TensorLike, samples: int = 1000) -> bool:
    """Whether simultaneously shuffling the first and last m modes by the
    same permutation leaves the tensor unchanged.

    Checked exhaustively over all mode permutations for m <= 3; for larger m
    a fixed-seed sample of (permutation, entry) probes is used.
    """
    t = as_tensor(a)
    m, _ = _even_order_cubic(t, "is_pair_symmetric")
    if m <= 3:
        for tau in Permutation.all(m):
            inv = tau.inverse().zero_based()
            axes = list(inv) + [m + v for v in inv]
            if not np.array_equal(np.transpose(t.array, axes), t.array):
                return False
        return True
    rng = np.random.default_rng(0)
    n = t.shape[0]
    for _ in range(samples):
        tau = rng.permutation(m)
        i = rng.integers(0, n, size=m)
        j = rng.integers(0, n, size=m)
        shuffled = tuple(i[tau]) + tuple(j[tau])
        if t.array[shuffled] != t.array[tuple(i) + tuple(j)]:
            return False
    return True


def is_balanced_permutation(a: TensorLike, tol: float = STRUCTURE_TOL) -> bool:
    """Whether the balance unfolding is a permutation matrix: every entry
    within ``tol`` of 0 or 1, with exactly one 1 per row and per column."""
    u = balance_unfold(a)
    ones = np.abs(u - 1.0) <= tol
    zeros = np.abs(u) <= tol
    if not np.all(ones | zeros):
        return False
    return bool(np.all(ones.sum(axis=0) == 1) and np.all(ones.sum(axis=1) == 1))


def check_nonneg_inverse(a: TensorLike, b: TensorLike) -> list[tuple[int, int]]:
    """Verify that two entrywise-nonnegative order-2m tensors are mutual
    inverses, and certify the structural consequence: the balance unfolding
    of each factor has exactly one positive entry per row and per column
    (it is a generalized permutation matrix).

    Returns the 0-based (row, column) positions of the positive entries of
    the unfolding of ``a``, sorted by row.  Raises DomainError on a negative
    entry and PreconditionError if the operands are not mutual inverses.
    """
    ta, tb = as_tensor(a), as_tensor(b)
    m, n = _even_order_cubic(ta, "check_nonneg_inverse")
    if ta.shape != tb.shape:
        raise DimensionError(f"operand shapes differ: {ta.shape} vs {tb.shape}")
    if np.any(ta.array < 0) or np.any(tb.array < 0):
        raise DomainError("operands must be entrywise nonnegative")
    ident = np.eye(n**m)
    left = balance_unfold(mul_2m(ta, tb))
    right = balance_unfold(mul_2m(tb, ta))
    if not (
        np.allclose(left, ident, atol=INVERSE_CHECK_TOL)
        and np.allclose(right, ident, atol=INVERSE_CHECK_TOL)
    ):
        raise PreconditionError("operands are not mutual inverses")
    u = balance_unfold(ta)
    positive = u > STRUCTURE_TOL
    rows_ok = np.all(positive.sum(axis=1) == 1)
    cols_ok = np.all(positive.sum(axis=0) == 1)
    if not (rows_ok and cols_ok):
        raise PreconditionError(
            "unfolding is not a generalized permutation matrix; "
            "inputs are numerically degenerate"
        )
    rr, cc = np.nonzero(positive)
    return sorted(zip(rr.tolist(), cc.tolist()))
