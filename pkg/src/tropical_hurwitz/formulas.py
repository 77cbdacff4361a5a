"""Closed-form Hurwitz numbers of the sphere."""

from __future__ import annotations

import math
from fractions import Fraction

from .partitions import Partition, aut_order


def two_full_cycles(d: int) -> Fraction:
    """Two branch points, both fully ramified: 1/d."""
    if d < 1:
        raise ValueError("degree must be positive")
    return Fraction(1, d)


def three_point_special(d: int, lambda1: int, lambda2: int) -> Fraction:
    """Profiles (lambda1, lambda2), (d) and (2, 1, ..., 1): 1/|Aut(lambda1, lambda2)|."""
    if lambda1 < 1 or lambda2 < 1 or lambda1 + lambda2 != d:
        raise ValueError(f"({lambda1}, {lambda2}) does not partition {d}")
    return Fraction(1, aut_order(Partition([lambda1, lambda2])))


def simple_point_count(d: int, mu0: Partition) -> int:
    """Simple branch points forced by Riemann-Hurwitz for a genus-0 cover of the sphere."""
    return d + len(mu0) - 2


def hurwitz_one_special(d: int, mu0) -> Fraction:
    """Hurwitz's formula: one profile mu0 and d + len(mu0) - 2 simple branch points.

        d^(k-3) (d+k-2)! / |Aut(mu0)| * prod_i lambda_i^lambda_i / lambda_i!
    """
    mu0 = Partition(mu0)
    if d < 1 or mu0.size != d:
        raise ValueError(f"{mu0} does not partition {d}")
    k = len(mu0)
    value = Fraction(d) ** (k - 3) * math.factorial(d + k - 2) / aut_order(mu0)
    for part in mu0:
        value *= Fraction(part**part, math.factorial(part))
    return value
