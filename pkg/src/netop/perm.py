"""Finite permutations of {1, ..., n} in one-line notation.

Everything here is 1-based: ``Permutation((2, 3, 1))`` sends 1 to 2, 2 to 3
and 3 to 1.  Composition applies the right operand first.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate, permutations
from typing import Iterable, Iterator, Sequence

from .errors import ArityError


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(i) for i in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{list(images)} is not a permutation of 1..{len(images)}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        if not 1 <= i <= len(self.images):
            raise IndexError(f"point {i} outside 1..{len(self.images)}")
        return self.images[i - 1]

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __add__(self, other: Permutation) -> Permutation:
        return block_sum(self, other)

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images, start=1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, start=1))

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.images)) + "]"

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


def identity(n: int) -> Permutation:
    return Permutation.identity(n)


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """``sigma ∘ tau``: apply ``tau`` first, then ``sigma``."""
    if sigma.n != tau.n:
        raise ArityError(f"cannot compose permutations of degree {sigma.n} and {tau.n}")
    s = sigma.images
    return Permutation(tuple(s[t - 1] for t in tau.images))


def block_sum(sigma: Permutation, tau: Permutation) -> Permutation:
    """Act by ``sigma`` on the first ``sigma.n`` points and by a shifted ``tau`` on the rest."""
    m = sigma.n
    return Permutation(sigma.images + tuple(t + m for t in tau.images))


def block_sum_all(perms: Iterable[Permutation]) -> Permutation:
    images: list[int] = []
    for p in perms:
        offset = len(images)
        images.extend(t + offset for t in p.images)
    return Permutation(tuple(images))


def block_swap(m: int, n: int) -> Permutation:
    """The braiding that moves the first ``m`` points past the last ``n``."""
    return Permutation(tuple(i + n for i in range(1, m + 1)) + tuple(range(1, n + 1)))


def block_induced(tau: Permutation, sizes: Sequence[int]) -> Permutation:
    """Promote ``tau`` in S_k to a permutation of whole blocks.

    ``sizes`` lists the blocks in source order.  Block ``i`` is moved, without
    internal reordering, to slot ``tau(i)`` of the target, so
    ``block_induced([2,1], [m, n]) == block_swap(m, n)``.
    """
    if tau.n != len(sizes):
        raise ArityError(f"permutation of degree {tau.n} cannot act on {len(sizes)} blocks")
    inverse = tau.inverse()
    target_offsets = [0, *accumulate(sizes[inverse(s) - 1] for s in range(1, tau.n + 1))]
    images: list[int] = []
    for i, size in enumerate(sizes, start=1):
        start = target_offsets[tau(i) - 1]
        images.extend(start + r for r in range(1, size + 1))
    return Permutation(tuple(images))


def all_permutations(n: int) -> Iterator[Permutation]:
    """Every element of S_n in lexicographic one-line order."""
    for p in permutations(range(1, n + 1)):
        yield Permutation(p)
