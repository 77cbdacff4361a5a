import math
from fractions import Fraction

import pytest

from oracles import frobenius_character
from tropical_hurwitz.characters import character, dimension, frobenius_disconnected, hook_lengths
from tropical_hurwitz.partitions import Partition, conjugacy_class_size, ones, partitions_of, z_order
from tropical_hurwitz.symgroup import MonodromyInstance, hurwitz_monodromy

P = Partition


@pytest.mark.parametrize("d", range(1, 7))
def test_trivial_and_sign(d):
    for mu in partitions_of(d):
        assert character(P([d]), mu) == 1
        assert character(ones(d), mu) == (-1) ** (d - len(mu))


def test_small_values():
    assert character(P([2, 1]), P([1, 1, 1])) == 2
    assert dimension(P([2, 2])) == 2
    assert dimension(P([1, 1, 1])) == 1
    assert sorted(hook_lengths(P([2, 2]))) == [1, 2, 2, 3]


def test_size_mismatch():
    with pytest.raises(ValueError):
        character(P([2, 1]), P([2]))


@pytest.mark.parametrize("d", range(1, 6))
def test_against_frobenius_character_formula(d):
    for lam in partitions_of(d):
        for mu in partitions_of(d):
            assert character(lam, mu) == frobenius_character(lam, mu)


@pytest.mark.parametrize("d", range(1, 7))
def test_orthogonality(d):
    ps = partitions_of(d)
    for mu in ps:
        for nu in ps:
            col = sum(character(lam, mu) * character(lam, nu) for lam in ps)
            assert col == (z_order(mu) if mu == nu else 0)
    for lam in ps:
        assert dimension(lam) == character(lam, ones(d))
        for rho in ps:
            row = sum(conjugacy_class_size(mu) * character(lam, mu) * character(rho, mu) for mu in ps)
            assert row == (math.factorial(d) if lam == rho else 0)


def test_frobenius_values():
    assert frobenius_disconnected(2, 0, [P([2]), P([2])]) == Fraction(1, 2)
    assert frobenius_disconnected(2, 0, [P([2])] * 3) == 0
    assert frobenius_disconnected(2, 1, []) == 2


def test_full_cycle_forces_connectedness():
    for d in range(2, 6):
        for mu in partitions_of(d):
            profs = (P([d]), mu)
            conn = hurwitz_monodromy(MonodromyInstance(d, 0, profs))
            assert frobenius_disconnected(d, 0, profs) == conn
