"""From surfaces with circles to marked tropical bases, and the reduction identities.

A :class:`SurfaceSpec` describes the classical data through its dual graph:
one component per connected piece of S minus the circles (with genus, degree
and marked points) and one circle per separating or non-separating curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .covers import Cover, enumerate_covers, tropical_open_hurwitz
from .covers.enumerate import DEFAULT_NODE_BUDGET
from .covers.model import EMPTY_BUT_WELL_FORMED
from .partitions import Partition, aut_order
from .symgroup import DEFAULT_MAX_DEGREE, MonodromyInstance, hurwitz_monodromy, local_sphere_hurwitz
from .tropcurve import (
    INTERIOR,
    LEAF,
    Cut,
    Edge,
    InvalidInstance,
    MarkedBase,
    TropicalGraph,
    Vertex,
    Violation,
    check_valid,
    components,
)


@dataclass(frozen=True)
class Point:
    id: str
    profile: Partition

    def __post_init__(self):
        object.__setattr__(self, "profile", Partition(self.profile))


@dataclass(frozen=True)
class Component:
    id: str
    genus: int = 0
    degree: int = 0
    points: tuple[Point, ...] = ()


@dataclass(frozen=True)
class Circle:
    id: str
    sides: tuple[str, str]
    profile: Partition = field(default_factory=Partition)

    def __post_init__(self):
        object.__setattr__(self, "profile", Partition(self.profile))

    @property
    def self_adjacent(self) -> bool:
        return self.sides[0] == self.sides[1]


@dataclass(frozen=True)
class SurfaceSpec:
    components: tuple[Component, ...]
    circles: tuple[Circle, ...] = ()

    @property
    def component(self) -> dict[str, Component]:
        return {c.id: c for c in self.components}

    @property
    def genus(self) -> int:
        """b1 of the dual graph plus the component genera."""
        b1 = len(self.circles) - len(self.components) + 1
        return b1 + sum(c.genus for c in self.components)

    def violations(self) -> list[Violation]:
        out = []
        ids = [c.id for c in self.components]
        if not ids:
            return [Violation("surface", "no components")]
        if len(set(ids)) != len(ids):
            out.append(Violation("surface", "duplicate component ids"))
        names = [p.id for c in self.components for p in c.points] + [c.id for c in self.circles]
        if len(set(names)) != len(names):
            out.append(Violation("surface", "duplicate point or circle ids"))
        comp = self.component
        for c in self.components:
            if c.genus < 0 or c.degree < 0:
                out.append(Violation("surface", f"component {c.id} has negative genus or degree"))
            for p in c.points:
                if p.profile.size != c.degree:
                    out.append(Violation("profile-sum", f"profile of {p.id} sums to {p.profile.size} != delta={c.degree}"))
        for L in self.circles:
            if not all(s in comp for s in L.sides):
                out.append(Violation("surface", f"circle {L.id} touches an unknown component"))
                continue
            gamma = abs(comp[L.sides[0]].degree - comp[L.sides[1]].degree)
            if L.self_adjacent and L.profile:
                out.append(Violation("surface", f"circle {L.id} has the same component on both sides; its profile must be empty"))
            elif L.profile.size != gamma:
                out.append(Violation("profile-sum", f"profile of {L.id} sums to {L.profile.size} != gamma={gamma}"))
        if not out and len(components(ids, [L.sides for L in self.circles])) != 1:
            out.append(Violation("surface", "dual graph is not connected"))
        return out


def closed_surface(genus: int, degree: int, profiles) -> SurfaceSpec:
    points = tuple(Point(f"p{i + 1}", mu) for i, mu in enumerate(profiles))
    return SurfaceSpec((Component("S", genus, degree, points),))


def _disk_leaf(spec: SurfaceSpec, comp: Component) -> bool:
    """A genus-0 component bounded by one separating circle with at most one point."""
    touching = [L for L in spec.circles if comp.id in L.sides]
    return comp.genus == 0 and len(comp.points) <= 1 and len(touching) == 1 and not touching[0].self_adjacent


SHAPES = ("trivalent", "compact")


def to_marked_base(spec: SurfaceSpec, shape: str = "trivalent") -> MarkedBase:
    """The marked base whose chambers are the components of ``spec``.

    With the trivalent shape each component becomes a caterpillar of trivalent
    vertices carrying one end per marked point, one stem per circle side and
    one loop handle per unit of genus (padded with unmarked ends when there
    are fewer than three).  The compact shape puts everything on a single
    vertex with one loop per unit of genus; it has far fewer cover types.
    A disk with at most one point collapses to a single leaf, unless the disk
    on the other side of its circle already did.
    """
    if shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}")
    bad = [v for v in spec.violations() if v.code not in EMPTY_BUT_WELL_FORMED]
    if bad:
        raise InvalidInstance(bad)
    verts: list[Vertex] = []
    edges: list[Edge] = []
    branches: dict[str, Partition] = {}
    degrees: dict[str, int] = {}
    attach: dict[tuple[str, int], str] = {}  # (circle id, side) -> base vertex

    leafy = set()
    for L in spec.circles:
        for side in (0, 1):
            comp = spec.component[L.sides[side]]
            if _disk_leaf(spec, comp) and L.sides[1 - side] not in leafy:
                leafy.add(comp.id)
                break

    for comp in spec.components:
        if comp.id in leafy:
            (L,) = [L for L in spec.circles if comp.id in L.sides]
            leaf = comp.points[0].id if comp.points else f"{comp.id}/end"
            verts.append(Vertex(leaf, LEAF))
            if comp.points:
                branches[leaf] = comp.points[0].profile
            degrees[leaf] = comp.degree
            attach[(L.id, L.sides.index(comp.id))] = leaf
            continue

        items: list[tuple[str, object]] = [("point", p) for p in comp.points]
        for L in spec.circles:
            items += [("circle", (L.id, side)) for side in (0, 1) if L.sides[side] == comp.id]
        items += [("handle", i + 1) for i in range(comp.genus)]
        pad = 0
        while len(items) + (comp.genus if shape == "compact" else 0) < 3:
            pad += 1
            items.append(("pad", pad))

        if shape == "compact":
            spine = [f"{comp.id}/v"]
            hosts = spine * len(items)
        else:
            n = len(items) - 2
            spine = [f"{comp.id}/v{i + 1}" for i in range(n)]
            edges += [Edge(f"{spine[i]}-{i + 2}", spine[i], spine[i + 1]) for i in range(n - 1)]
            hosts = [spine[0]] + spine + [spine[-1]]
        verts += [Vertex(v, INTERIOR) for v in spine]
        degrees[spine[0]] = comp.degree
        for host, (kind, item) in zip(hosts, items):
            if kind == "point":
                verts.append(Vertex(item.id, LEAF))
                edges.append(Edge(f"{item.id}/end", host, item.id))
                branches[item.id] = item.profile
            elif kind == "pad":
                leaf = f"{comp.id}/pad{item}"
                verts.append(Vertex(leaf, LEAF))
                edges.append(Edge(f"{leaf}/end", host, leaf))
            elif kind == "handle" and shape == "compact":
                edges.append(Edge(f"{comp.id}/loop{item}", host, host))
            elif kind == "handle":
                h = f"{comp.id}/h{item}"
                verts.append(Vertex(h, INTERIOR))
                edges += [Edge(f"{h}/stem", host, h), Edge(f"{h}/loop", h, h)]
            else:
                attach[item] = host

    cuts = []
    for L in spec.circles:
        a, b = attach[(L.id, 0)], attach[(L.id, 1)]
        if any(v.id == a and v.kind == LEAF for v in verts):
            a, b = b, a
        edges.append(Edge(f"{L.id}/edge", a, b))
        cuts.append(Cut(L.id, f"{L.id}/edge", L.profile))
    base = TropicalGraph(tuple(verts), tuple(edges))
    return check_valid(MarkedBase(base, tuple(cuts), branches, degrees), allow=EMPTY_BUT_WELL_FORMED)


def _rekey_degrees(mb: MarkedBase, base: TropicalGraph) -> dict[str, int]:
    """Chamber degrees of ``mb`` keyed by vertices that survive in ``base``."""
    survivors = set(base.vertex)
    out = {}
    for cid, members in mb.chambers.members.items():
        keep = sorted(members & survivors, key=lambda v: (base.vertex[v].kind != INTERIOR, v))
        if keep:
            out[keep[0]] = mb.chamber_degree.get(cid, 0)
    return out


def _drop_leaf(mb: MarkedBase, leaf: str) -> MarkedBase | None:
    """Delete ``leaf`` and its end, smoothing a vertex left 2-valent; None if the result is degenerate."""
    base = mb.base
    (end,) = [e for e in base.edges if e.head == leaf]
    v = end.tail
    verts = [x for x in base.vertices if x.id != leaf]
    edges = [e for e in base.edges if e.id != end.id]
    cuts = list(mb.cuts)
    if end.id in mb.cut_on_edge:
        return None
    if base.valence(v) == 3:
        rest = [e for e in edges if v in (e.tail, e.head)]
        if len(rest) != 2:  # only a loop is left at v
            return None
        e1, e2 = rest
        if e1.id in mb.cut_on_edge and e2.id in mb.cut_on_edge:
            return None
        a = e1.tail if e1.head == v else e1.head
        b = e2.head if e2.tail == v else e2.tail
        if base.vertex[a].kind == LEAF:
            a, b = b, a
        if base.vertex[a].kind == LEAF:
            return None
        merged = Edge(e1.id, a, b)
        edges = [merged if e.id == e1.id else e for e in edges if e.id != e2.id]
        verts = [x for x in verts if x.id != v]
        cuts = [Cut(c.id, e1.id, c.profile) if c.edge == e2.id else c for c in cuts]
    new_base = TropicalGraph(tuple(verts), tuple(edges))
    branches = {q: p for q, p in mb.branches.items() if q != leaf}
    return MarkedBase(new_base, tuple(cuts), branches, _rekey_degrees(mb, new_base))


def drop_trivial_points(mb: MarkedBase) -> MarkedBase:
    """Remove every branch leaf whose profile is all ones.

    The end is deleted and a vertex left 2-valent is smoothed.  Where deleting
    would break the base (a vertex left with only a loop, two cuts merging onto
    one edge, an edge between two leaves), the leaf stays as an unmarked end,
    which imposes the same all-ones condition.
    """
    for q, nu in mb.branches.items():
        if not nu.is_trivial():
            continue
        dropped = _drop_leaf(mb, q)
        if dropped is None or dropped.base.violations() or not dropped.base.interior:
            branches = {x: p for x, p in mb.branches.items() if x != q}
            dropped = MarkedBase(mb.base, mb.cuts, branches, mb.degrees)
        return drop_trivial_points(dropped)
    return mb


def boundary_to_branch(mb: MarkedBase, cut_id: str) -> MarkedBase:
    """Trade a cut on an end for a branch point at the end's leaf.

    The leaf receives the cut profile padded by as many ones as the degree
    over the segment between cut and leaf; that segment's degree rises by the
    cut's gamma, merging it with the chamber on the other side.
    """
    cut = next((c for c in mb.cuts if c.id == cut_id), None)
    if cut is None:
        raise ValueError(f"unknown cut {cut_id}")
    e = mb.base.edge[cut.edge]
    leaf = e.head
    if mb.base.vertex[leaf].kind != LEAF:
        raise ValueError(f"cut {cut_id} is not on an end")
    if leaf in mb.branches:
        raise ValueError(f"leaf {leaf} beyond cut {cut_id} is already a branch point")
    if any(part == 1 for part in cut.profile):
        raise ValueError(f"profile {cut.profile} of cut {cut_id} has a part equal to 1")
    disk, other = mb.degree_at(leaf), mb.degree_at(e.tail)
    if disk + mb.gamma(cut) != other:
        raise ValueError(f"degree {disk} beyond cut {cut_id} must be below the degree {other} on the other side")
    branches = dict(mb.branches)
    branches[leaf] = Partition(list(cut.profile) + [1] * disk)
    cuts = tuple(c for c in mb.cuts if c.id != cut_id)
    degrees = {v: k for v, k in mb.degrees.items() if mb.chambers.of_vertex[v] != mb.chambers.of_vertex[leaf]}
    return check_valid(MarkedBase(mb.base, cuts, branches, degrees))


def simple_profile(d: int) -> Partition:
    return Partition([2] + [1] * (d - 2))


def double_hurwitz_base(d: int, mu0, mu_inf, g: int) -> MarkedBase:
    """Rational caterpillar with ends mu0, the simple branch points and muInf, in that order."""
    mu0, mu_inf = Partition(mu0), Partition(mu_inf)
    if mu0.size != d or mu_inf.size != d:
        raise ValueError(f"{mu0} and {mu_inf} must both partition {d}")
    s = 2 * g - 2 + len(mu0) + len(mu_inf)
    if s < 0:
        raise ValueError(f"negative number of simple branch points ({s})")
    if d < 2 and s > 0:
        raise ValueError("simple branch points need degree at least 2")
    profiles = [mu0] + [simple_profile(d)] * s + [mu_inf]
    spec = SurfaceSpec((Component("P", 0, d, tuple(Point(f"q{i}", mu) for i, mu in enumerate(profiles))),))
    return to_marked_base(spec)


def double_hurwitz(
    d: int,
    mu0,
    mu_inf,
    g: int = 0,
    *,
    max_degree: int = DEFAULT_MAX_DEGREE,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Fraction:
    """Connected genus-g covers of the sphere with profiles mu0, muInf and simple branching elsewhere.

    Computed tropically and, when the degree is small enough, checked against
    the monodromy count.
    """
    if d == 1 and g > 0:
        return Fraction(0)  # no transpositions in S_1
    mb = double_hurwitz_base(d, mu0, mu_inf, g)
    total = tropical_open_hurwitz(mb, max_degree=max_degree, node_budget=node_budget).total
    if d <= max_degree:
        profiles = tuple(mb.branches.values())
        oracle = hurwitz_monodromy(MonodromyInstance(d, 0, profiles), max_degree)
        if oracle != total:
            raise AssertionError(f"tropical {total} != monodromy {oracle}")
    return total


def cjm_local_factors(h: Cover, mb: MarkedBase, leaf: str, max_degree: int = DEFAULT_MAX_DEGREE) -> tuple[Fraction, Fraction]:
    """Both sides of the local identity at a simple branch leaf.

    Over the vertex v next to ``leaf`` the pieces v_1..v_l have degrees d_j,
    v_1 carrying the weight-2 end.  The product of their local factors
    prod |Aut(mu')| * H(d_j, mu') equals (d_1 - 2)! * prod_{j>=2} d_j! / d_j.
    """
    (end,) = [e for e in mb.base.edges if e.head == leaf]
    v = end.tail
    slot = mb.base.directions(v).index((end.id, "tail"))
    lhs = Fraction(1)
    rhs = Fraction(1)
    for p in h.pieces:
        if p.vertex != v:
            continue
        lhs *= math.prod(aut_order(mu) for mu in p.profiles) * local_sphere_hurwitz(p.degree, p.profiles, max_degree)
        if 2 in p.profiles[slot]:
            rhs *= math.factorial(p.degree - 2)
        else:
            rhs *= Fraction(math.factorial(p.degree), p.degree)
    return lhs, rhs


def cjm_check(d: int, mu0, mu_inf, g: int = 0, max_degree: int = DEFAULT_MAX_DEGREE) -> list[str]:
    """Failures of the local identity over every simple leaf of every cover of the double Hurwitz base."""
    mb = double_hurwitz_base(d, mu0, mu_inf, g)
    simple = [f"q{i}" for i in range(1, len(mb.branches) - 1)]
    failures = []
    for h in enumerate_covers(mb):
        for q in simple:
            lhs, rhs = cjm_local_factors(h, mb, q, max_degree)
            if lhs != rhs:
                failures.append(f"cover {h.cover_id} at {q}: {lhs} != {rhs}")
    return failures


__all__ = [
    "Circle",
    "Component",
    "Point",
    "SHAPES",
    "SurfaceSpec",
    "boundary_to_branch",
    "cjm_check",
    "cjm_local_factors",
    "closed_surface",
    "double_hurwitz",
    "double_hurwitz_base",
    "drop_trivial_points",
    "simple_profile",
    "to_marked_base",
]
