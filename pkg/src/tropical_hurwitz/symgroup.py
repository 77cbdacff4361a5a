"""Classical Hurwitz numbers by exhaustive monodromy counting.

A degree-d cover of a genus-g surface branched over k points with profiles
mu_1..mu_k corresponds to a tuple (a_1, b_1, ..., a_g, b_g, s_1, ..., s_k) of
permutations of {0..d-1} with

    [a_1, b_1] ... [a_g, b_g] s_1 ... s_k = id,   cycle_type(s_i) = mu_i,

counted up to simultaneous conjugation; the weighted count equals the number
of tuples divided by d!.  Connected covers are the tuples generating a
transitive subgroup.

This module deliberately uses no character theory: it is the reference the
tropical computation is tested against.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .partitions import Partition, conjugacy_class_size

DEFAULT_MAX_DEGREE = 7

Perm = tuple  # one-line notation: p[i] is the image of i


class DegreeBoundExceeded(ValueError):
    """Raised when an enumeration would exceed the configured degree bound."""


@dataclass(frozen=True)
class MonodromyInstance:
    degree: int
    genus: int = 0
    profiles: tuple[Partition, ...] = field(default_factory=tuple)
    connected: bool = True

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        profiles = tuple(Partition(p) for p in self.profiles)
        for mu in profiles:
            if mu.size != self.degree:
                raise ValueError(f"profile {mu} does not partition {self.degree}")
        object.__setattr__(self, "profiles", profiles)


def identity(d: int) -> Perm:
    return tuple(range(d))


def compose(p: Perm, q: Perm) -> Perm:
    """The product pq, applying q first."""
    return tuple(p[i] for i in q)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def commutator(a: Perm, b: Perm) -> Perm:
    return compose(compose(a, b), compose(inverse(a), inverse(b)))


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for start in range(len(p)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        j = p[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append(tuple(cyc))
    return out


def cycle_type(p: Perm) -> Partition:
    return Partition(len(c) for c in cycles(p))


def from_cycles(d: int, cycs) -> Perm:
    img = list(range(d))
    for cyc in cycs:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return tuple(img)


def representative(mu: Partition) -> Perm:
    """A fixed permutation of cycle type ``mu`` built from consecutive blocks."""
    cycs, start = [], 0
    for part in mu:
        cycs.append(tuple(range(start, start + part)))
        start += part
    return from_cycles(sum(mu), cycs)


def is_transitive(perms, d: int) -> bool:
    return _orbit_labels(perms, d) == (0,) * d


def _orbit_labels(perms, d: int, start=None) -> tuple[int, ...]:
    """Union-find over {0..d-1}; returns each point's smallest orbit mate."""
    parent = list(start) if start is not None else list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for i, j in enumerate(p):
            ri, rj = find(i), find(j)
            if ri != rj:
                if ri < rj:
                    parent[rj] = ri
                else:
                    parent[ri] = rj
    return tuple(find(i) for i in range(d))


def _join(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # a and b are orbit-label vectors; treat b as a "permutation-like" edge set
    return _orbit_labels([b], len(a), start=a)


@lru_cache(maxsize=None)
def conjugacy_class(mu: Partition) -> tuple[Perm, ...]:
    d = sum(mu)
    return tuple(p for p in itertools.permutations(range(d)) if cycle_type(p) == mu)


@lru_cache(maxsize=None)
def _class_moves(mu: Partition) -> tuple[tuple[Perm, tuple[int, ...], int], ...]:
    d = sum(mu)
    return tuple((p, _orbit_labels([p], d), 1) for p in conjugacy_class(mu))


@lru_cache(maxsize=None)
def _commutator_moves(d: int) -> tuple[tuple[Perm, tuple[int, ...], int], ...]:
    """All pairs (a, b) aggregated by (commutator, orbit labels of <a, b>)."""
    counts: dict = defaultdict(int)
    elements = list(itertools.permutations(range(d)))
    for a in elements:
        for b in elements:
            counts[(commutator(a, b), _orbit_labels([a, b], d))] += 1
    return tuple((c, lab, n) for (c, lab), n in sorted(counts.items()))


def count_tuples(d: int, genus: int, profiles, connected: bool) -> int:
    """Number of monodromy tuples with product identity (and transitivity if asked).

    Depth-first enumeration of the factors, memoized on the running product and
    the orbit partition generated so far: two partial tuples agreeing on both
    have identical sets of completions.  The first branch factor is pinned to
    one representative of its class and the count scaled by the class size.
    """
    profiles = [Partition(p) for p in profiles]
    factors = [("comm", None)] * genus + [("class", mu) for mu in profiles]
    discrete = tuple(range(d))
    if profiles:
        # pin the first branch factor; conjugation permutes the tuples with s_1 in its class
        first = profiles[0]
        rep = representative(first)
        scale = conjugacy_class_size(first)
        factors = [("comm", None)] * genus + [("class", mu) for mu in profiles[1:]]
        states = {(rep, _orbit_labels([rep], d)): 1}
    else:
        scale = 1
        states = {(identity(d), discrete): 1}

    for kind, mu in factors:
        moves = _commutator_moves(d) if kind == "comm" else _class_moves(mu)
        nxt: dict = defaultdict(int)
        for (prod, labels), n in states.items():
            for perm, plabels, mult in moves:
                key = (compose(prod, perm), _join(labels, plabels) if connected else discrete)
                nxt[key] += n * mult
        states = nxt

    ident = identity(d)
    if connected:
        total = states.get((ident, (0,) * d), 0)
    else:
        total = sum(n for (prod, _), n in states.items() if prod == ident)
    return total * scale


def hurwitz_monodromy(inst: MonodromyInstance, max_degree: int = DEFAULT_MAX_DEGREE) -> Fraction:
    """Weighted count of degree-d covers, as (number of monodromy tuples) / d!."""
    d = inst.degree
    if d > max_degree:
        raise DegreeBoundExceeded(f"degree {d} exceeds the enumeration bound {max_degree}")
    return Fraction(count_tuples(d, inst.genus, inst.profiles, inst.connected), math.factorial(d))


@lru_cache(maxsize=None)
def _sphere_factor(d: int, profiles: tuple[Partition, ...]) -> Fraction:
    return hurwitz_monodromy(MonodromyInstance(d, 0, profiles, True), max_degree=d)


def local_sphere_hurwitz(d: int, profiles, max_degree: int = DEFAULT_MAX_DEGREE) -> Fraction:
    """Connected Hurwitz number of the sphere, memoized on (d, sorted profiles)."""
    if d > max_degree:
        raise DegreeBoundExceeded(f"local degree {d} exceeds the enumeration bound {max_degree}")
    key = tuple(sorted(Partition(p) for p in profiles))
    return _sphere_factor(d, key)
