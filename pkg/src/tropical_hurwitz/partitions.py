"""Integer partitions used as ramification profiles and cycle types."""

from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache


class Partition(tuple):
    """A multiset of positive integers, stored in non-increasing order.

    Construction sorts the parts, so ``Partition([1, 2, 1]) == Partition([2, 1, 1])``
    and multiset equality is plain tuple equality.
    """

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = sorted((int(p) for p in parts), reverse=True)
        if parts and parts[-1] < 1:
            raise ValueError(f"partition parts must be positive, got {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def multiplicities(self) -> dict[int, int]:
        return dict(Counter(self))

    def is_trivial(self) -> bool:
        """True for (1, ..., 1), including the empty partition."""
        return all(p == 1 for p in self)

    def __add__(self, other):
        return Partition(tuple(self) + tuple(other))

    def __repr__(self) -> str:
        return f"Partition({list(self)})"

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self)) + "]"


def ones(n: int) -> Partition:
    return Partition([1] * n)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse-lexicographic order."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return [Partition(p) for p in _partitions(n, n)]


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def aut_order(mu: Partition) -> int:
    """Order of the group permuting equal parts: prod over j of m_j!."""
    return math.prod(math.factorial(m) for m in Counter(mu).values())


def z_order(mu: Partition) -> int:
    """Centralizer order z_mu = prod_j j^{m_j} m_j! of a permutation of cycle type mu."""
    return math.prod(j**m * math.factorial(m) for j, m in Counter(mu).items())


def conjugacy_class_size(mu: Partition) -> int:
    """Number of permutations of {1..d} with cycle type ``mu``."""
    if not mu:
        raise ValueError("cycle type must partition a positive degree")
    return math.factorial(sum(mu)) // z_order(mu)


def is_submultiset(small, big) -> bool:
    have = Counter(big)
    have.subtract(Counter(small))
    return all(v >= 0 for v in have.values())


def parse_partition(text: str) -> Partition:
    """Parse ``[2,1,1]``, ``2,1,1`` or ``2 1 1``; ``[]`` and ``""`` give the empty partition."""
    body = text.strip().strip("[]").replace(",", " ").split()
    return Partition(int(tok) for tok in body)
