"""Finite permutations on {1, ..., k}, stored as tuples of images."""

from __future__ import annotations

import itertools
from typing import Iterable, Iterator

import numpy as np

from .errors import ArgumentError, RangeError


class Permutation:
    """A bijection of {1, ..., k}.  ``images[i-1]`` is the image of i."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(v) for v in images)
        if len(imgs) == 0:
            raise ArgumentError("permutation degree must be at least 1")
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise ArgumentError(f"not a permutation of 1..{len(imgs)}: {imgs}")
        self.images = imgs

    @classmethod
    def identity(cls, k: int) -> "Permutation":
        if k < 1:
            raise ArgumentError("degree must be positive")
        return cls(range(1, k + 1))

    @classmethod
    def from_cycles(cls, k: int, *cycles: Iterable[int]) -> "Permutation":
        """Build from disjoint cycles, e.g. ``from_cycles(3, (1, 2, 3))``."""
        imgs = list(range(1, k + 1))
        for cycle in cycles:
            cyc = [int(v) for v in cycle]
            if any(v < 1 or v > k for v in cyc):
                raise RangeError(f"cycle entry outside 1..{k}: {cyc}")
            if len(set(cyc)) != len(cyc):
                raise ArgumentError(f"repeated entry in cycle {cyc}")
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                imgs[a - 1] = b
        return cls(imgs)

    @classmethod
    def all(cls, k: int) -> Iterator["Permutation"]:
        """All k! permutations of degree k, lexicographic by images."""
        for imgs in itertools.permutations(range(1, k + 1)):
            yield cls(imgs)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= self.degree:
            raise RangeError(f"index {i} outside 1..{self.degree}")
        return self.images[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """self∘other: first apply ``other``, then ``self``."""
        if other.degree != self.degree:
            raise ArgumentError("degree mismatch in composition")
        return Permutation(self.images[j - 1] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, img in enumerate(self.images, start=1):
            inv[img - 1] = i
        return Permutation(inv)

    def sign(self) -> int:
        """+1 for even, -1 for odd, by inversion count."""
        inv = sum(
            1
            for a in range(self.degree)
            for b in range(a + 1, self.degree)
            if self.images[a] > self.images[b]
        )
        return -1 if inv % 2 else 1

    def matrix(self) -> np.ndarray:
        """Permutation matrix P with P e_j = e_{images[j-1]}.

        Under this column convention P(σ)·P(τ) = P(σ∘τ).
        """
        k = self.degree
        mat = np.zeros((k, k))
        for j, img in enumerate(self.images, start=1):
            mat[img - 1, j - 1] = 1.0
        return mat

    def zero_based(self) -> tuple[int, ...]:
        return tuple(v - 1 for v in self.images)

    def is_identity(self) -> bool:
        return all(img == i for i, img in enumerate(self.images, start=1))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"
