"""Irreducible characters of symmetric groups and the Frobenius count.

Characters come from the Murnaghan-Nakayama rule on beta-sets: a border strip
of length r in lambda corresponds to moving a bead of the beta-set down by r
positions to a free slot, with sign (-1)^(beads jumped over).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .partitions import Partition, conjugacy_class_size, partitions_of


def _beta_set(lam: Partition) -> tuple[int, ...]:
    n = len(lam)
    return tuple(lam[i] + (n - 1 - i) for i in range(n))


def _from_beta(beta) -> Partition:
    beads = sorted(beta, reverse=True)
    n = len(beads)
    return Partition(b - (n - 1 - i) for i, b in enumerate(beads) if b - (n - 1 - i) > 0)


def border_strips(lam: Partition, r: int):
    """Yield (lambda minus a border strip of size r, height) for every such strip."""
    beta = _beta_set(lam)
    occupied = set(beta)
    for b in beta:
        target = b - r
        if target < 0 or target in occupied:
            continue
        height = sum(1 for c in beta if target < c < b)
        rest = [c for c in beta if c != b] + [target]
        yield _from_beta(rest), height


@lru_cache(maxsize=None)
def _character(lam: Partition, mu: Partition) -> int:
    if not mu:
        return 1 if not lam else 0
    r, rest = mu[0], Partition(mu[1:])
    return sum((-1) ** h * _character(smaller, rest) for smaller, h in border_strips(lam, r))


def character(lam, mu) -> int:
    """chi_lambda evaluated on the class of cycle type mu."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size:
        raise ValueError(f"{lam} and {mu} partition different integers")
    return _character(lam, mu)


def hook_lengths(lam: Partition) -> list[int]:
    lam = Partition(lam)
    conj = [sum(1 for part in lam if part > j) for j in range(lam[0])] if lam else []
    return [lam[i] - j + conj[j] - i - 1 for i in range(len(lam)) for j in range(lam[i])]


def dimension(lam) -> int:
    lam = Partition(lam)
    return math.factorial(lam.size) // math.prod(hook_lengths(lam))


def frobenius_disconnected(d: int, genus: int, profiles) -> Fraction:
    """Possibly-disconnected Hurwitz number from the character sum.

    (1/d!) * #tuples = sum_lambda (dim/d!)^(2-2g) * prod_i |C_i| chi(mu_i)/dim
    """
    profiles = [Partition(p) for p in profiles]
    for mu in profiles:
        if mu.size != d:
            raise ValueError(f"profile {mu} does not partition {d}")
    fact = math.factorial(d)
    total = Fraction(0)
    for lam in partitions_of(d):
        dim = dimension(lam)
        term = Fraction(dim, fact) ** (2 - 2 * genus)
        for mu in profiles:
            term *= Fraction(conjugacy_class_size(mu) * character(lam, mu), dim)
        total += term
    return total
