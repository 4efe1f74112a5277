"""Dense real tensors with a fixed canonical layout, plus the contraction
algebra used throughout the package.

Conventions
-----------
* Mode indices ``i_k`` are 1-based in the math and in every docstring; numpy
  storage is 0-based.  Public APIs that take a mode number ``k`` take it
  1-based.
* The canonical flat layout of a tensor of shape ``(d_1, ..., d_m)`` places
  entry ``(i_1, ..., i_m)`` at offset ``sum_k (i_k - 1) * d_1*...*d_{k-1}``,
  i.e. the first mode varies fastest (column-major / Fortran order).
  ``vec`` of a matrix, every unfolding, and every serialization in this
  package derive from this single rule.
* Tensors are immutable after construction.  A :class:`DenseTensor` may be
  shared freely between threads; all operations return new tensors.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ArgumentError, DimensionError, DomainError, ModeError, RangeError

TensorLike = Union["DenseTensor", np.ndarray, Sequence]


def flat_offset(coords: Sequence[int], dims: Sequence[int]) -> int:
    """0-based canonical offset of 1-based coordinates ``coords`` in ``dims``."""
    if len(coords) != len(dims):
        raise DimensionError(f"{len(coords)} coordinates for {len(dims)} modes")
    offset = 0
    stride = 1
    for c, d in zip(coords, dims):
        if not 1 <= c <= d:
            raise RangeError(f"coordinate {c} outside 1..{d}")
        offset += (c - 1) * stride
        stride *= d
    return offset


def coords_from_offset(offset: int, dims: Sequence[int]) -> tuple[int, ...]:
    """Inverse of :func:`flat_offset`: 1-based coordinates of a 0-based offset."""
    total = 1
    for d in dims:
        total *= d
    if not 0 <= offset < total:
        raise RangeError(f"offset {offset} outside 0..{total - 1}")
    coords = []
    for d in dims:
        coords.append(offset % d + 1)
        offset //= d
    return tuple(coords)


class DenseTensor:
    """An immutable dense real tensor of order >= 1.

    Parameters
    ----------
    data : array-like
        Anything ``np.array`` accepts; copied and frozen.  All entries are
        stored as float64.

    Examples
    --------
    >>> t = DenseTensor([[1.0, 2.0], [3.0, 4.0]])
    >>> t.shape
    (2, 2)
    >>> t.entry(2, 1)
    3.0
    >>> list(t.values)
    [1.0, 3.0, 2.0, 4.0]
    """

    __slots__ = ("_array",)

    def __init__(self, data):
        arr = np.array(data, dtype=float)
        if arr.ndim < 1:
            raise DimensionError("a tensor has at least one mode")
        if any(d < 1 for d in arr.shape):
            raise ArgumentError(f"every mode extent must be positive, got {arr.shape}")
        arr.flags.writeable = False
        self._array = arr

    @classmethod
    def from_flat(cls, shape: Sequence[int], values: Iterable[float]) -> "DenseTensor":
        """Rebuild from a shape and canonical (first-mode-fastest) flat values."""
        shape = tuple(int(d) for d in shape)
        vals = np.array(list(values), dtype=float)
        size = int(np.prod(shape)) if shape else 0
        if len(shape) < 1 or any(d < 1 for d in shape):
            raise ArgumentError(f"bad shape {shape}")
        if vals.size != size:
            raise DimensionError(f"{vals.size} values for shape {shape} (need {size})")
        return cls(vals.reshape(shape, order="F"))

    @property
    def array(self) -> np.ndarray:
        """Read-only ndarray view of the entries."""
        return self._array

    @property
    def shape(self) -> tuple[int, ...]:
        return self._array.shape

    @property
    def order(self) -> int:
        """Number of modes."""
        return self._array.ndim

    @property
    def values(self) -> np.ndarray:
        """Entries in canonical flat order (first mode fastest)."""
        return self._array.ravel(order="F")

    def entry(self, *coords: int) -> float:
        """Entry at 1-based coordinates."""
        if len(coords) != self.order:
            raise DimensionError(f"{len(coords)} coordinates for order {self.order}")
        for c, d in zip(coords, self.shape):
            if not 1 <= c <= d:
                raise RangeError(f"coordinate {c} outside 1..{d}")
        return float(self._array[tuple(c - 1 for c in coords)])

    def __repr__(self) -> str:
        return f"DenseTensor(shape={self.shape})"


def as_tensor(value: TensorLike) -> DenseTensor:
    """Coerce a DenseTensor or array-like into a DenseTensor."""
    if isinstance(value, DenseTensor):
        return value
    return DenseTensor(value)


def as_matrix(value: TensorLike) -> np.ndarray:
    """Coerce to a 2-D float ndarray; rejects any other order."""
    arr = value.array if isinstance(value, DenseTensor) else np.asarray(value, dtype=float)
    if arr.ndim != 2:
        raise DimensionError(f"expected a matrix, got order {arr.ndim}")
    return arr


def _even_order_cubic(t: DenseTensor, name: str) -> tuple[int, int]:
    """Validate order 2m with all extents equal; return (m, n)."""
    if t.order % 2 != 0:
        raise DimensionError(f"{name}: order must be even, got {t.order}")
    n = t.shape[0]
    if any(d != n for d in t.shape):
        raise DimensionError(f"{name}: all mode extents must agree, got {t.shape}")
    return t.order // 2, n


def mode_n_product(a: TensorLike, mat: TensorLike, k: int) -> DenseTensor:
    """Mode-k product: contract mode k of ``a`` against the columns of ``mat``.

    Entry ``(i_1, ..., i_m)`` of the result is
    ``sum_j mat[i_k, j] * a[i_1, ..., j, ..., i_m]`` (j in mode k), so the
    row count of ``mat`` becomes the new extent of mode k.
    """
    t = as_tensor(a)
    m = as_matrix(mat)
    if not 1 <= k <= t.order:
        raise ModeError(f"mode {k} outside 1..{t.order}")
    if m.shape[1] != t.shape[k - 1]:
        raise DimensionError(
            f"matrix has {m.shape[1]} columns but mode {k} has extent {t.shape[k - 1]}"
        )
    moved = np.tensordot(m, t.array, axes=([1], [k - 1]))
    return DenseTensor(np.moveaxis(moved, 0, k - 1))


def contract_34(a: TensorLike, mat: TensorLike) -> np.ndarray:
    """Contract modes 3 and 4 of an order-4 tensor against a matrix.

    Returns the matrix with entries ``sum_{k,l} a[i,j,k,l] * mat[k,l]``.
    """
    t = as_tensor(a)
    if t.order != 4:
        raise DimensionError(f"contract_34 needs an order-4 tensor, got order {t.order}")
    m = as_matrix(mat)
    if m.shape != t.shape[2:]:
        raise DimensionError(
            f"matrix shape {m.shape} does not match trailing modes {t.shape[2:]}"
        )
    return np.tensordot(t.array, m, axes=([2, 3], [0, 1]))


def mul_2m(a: TensorLike, b: TensorLike) -> DenseTensor:
    """Product of two order-2m tensors with all extents equal:

    ``(ab)[i_1..i_m, j_1..j_m] = sum_{k_1..k_m} a[i, k] * b[k, j]``.
    """
    ta, tb = as_tensor(a), as_tensor(b)
    m, n = _even_order_cubic(ta, "mul_2m")
    mb, nb = _even_order_cubic(tb, "mul_2m")
    if (m, n) != (mb, nb):
        raise DimensionError(f"operand shapes differ: {ta.shape} vs {tb.shape}")
    return DenseTensor(np.tensordot(ta.array, tb.array, axes=m))


def mul_2m_on_m(a: TensorLike, x: TensorLike) -> DenseTensor:
    """Apply an order-2m tensor to an order-m tensor:

    ``(a·x)[i_1..i_m] = sum_{k_1..k_m} a[i, k] * x[k]``.
    """
    ta, tx = as_tensor(a), as_tensor(x)
    m, n = _even_order_cubic(ta, "mul_2m_on_m")
    if tx.order != m or any(d != n for d in tx.shape):
        raise DimensionError(
            f"operand of shape {tx.shape} does not match acting tensor of shape {ta.shape}"
        )
    return DenseTensor(np.tensordot(ta.array, tx.array, axes=m))


def balance_unfold(a: TensorLike) -> np.ndarray:
    """Unfold an order-2m tensor to the n^m x n^m matrix that pairs the first
    m modes (rows) against the last m modes (columns), both in canonical
    flat order.  This is a pure memory reinterpretation, and it is a ring
    homomorphism: the unfolding of ``mul_2m(a, b)`` is the matrix product of
    the unfoldings.
    """
    t = as_tensor(a)
    m, n = _even_order_cubic(t, "balance_unfold")
    size = n**m
    return t.array.reshape(size, size, order="F").copy()


def balance_refold(mat: TensorLike, m: int, n: int) -> DenseTensor:
    """Inverse of :func:`balance_unfold` for given mode count m and extent n."""
    u = as_matrix(mat)
    if m < 1 or n < 1:
        raise ArgumentError(f"m and n must be positive, got m={m}, n={n}")
    size = n**m
    if u.shape != (size, size):
        raise DimensionError(f"matrix shape {u.shape} is not ({size}, {size})")
    return DenseTensor(u.reshape((n,) * (2 * m), order="F"))


def permute_modes(a: TensorLike, tau) -> DenseTensor:
    """Shuffle modes: entry ``(i_1, ..., i_m)`` of the result is
    ``a[i_{tau(1)}, ..., i_{tau(m)}]``.
    """
    t = as_tensor(a)
    if tau.degree != t.order:
        raise DimensionError(f"permutation degree {tau.degree} != order {t.order}")
    # np.transpose's axes[k] names the source axis that becomes result axis k,
    # which is the inverse of the index-level rule above.
    return DenseTensor(np.transpose(t.array, tau.inverse().zero_based()))


def complete_right_product(a: TensorLike, mat: TensorLike) -> DenseTensor:
    """Apply one square matrix on every mode: ``a x_1 mat x_2 mat ... x_m mat``."""
    t = as_tensor(a)
    m = as_matrix(mat)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"matrix must be square, got {m.shape}")
    if any(d != m.shape[1] for d in t.shape):
        raise DimensionError(f"matrix of size {m.shape[0]} cannot act on shape {t.shape}")
    out = t
    for k in range(1, t.order + 1):
        out = mode_n_product(out, m, k)
    return out


def identity_tensor(m: int, n: int) -> DenseTensor:
    """Order-m tensor with 1 at every diagonal position (i, i, ..., i)."""
    if m < 1 or n < 1:
        raise ArgumentError(f"m and n must be positive, got m={m}, n={n}")
    arr = np.zeros((n,) * m)
    for i in range(n):
        arr[(i,) * m] = 1.0
    return DenseTensor(arr)
