"""Tropical covers of a marked base, their multiplicities and the tropical count."""

from __future__ import annotations

import hashlib
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from ..partitions import Partition, aut_order
from ..symgroup import DEFAULT_MAX_DEGREE, local_sphere_hurwitz
from ..tropcurve import (
    BOUNDARY,
    INTERIOR,
    LEAF,
    Edge,
    MarkedBase,
    TropicalGraph,
    Vertex,
    check_valid,
    local_genus,
    validate,
)
from .enumerate import DEFAULT_NODE_BUDGET, CoverSearch, PieceState, State, canonicalize

# a profile that cannot sum to its chamber degree leaves S^T empty; it is not a malformed base
EMPTY_BUT_WELL_FORMED = ("profile-sum",)


@dataclass(frozen=True)
class Cover:
    """One combinatorial type of tropical cover.

    ``pieces`` are the interior cover vertices (in canonical order); ``arcs``
    are the cover edges joining two of them, grouped as
    ((base edge, tail piece, head piece, weight), count).  Leaf ends and
    boundary edges are recorded on the pieces.  ``bare`` is set only for the
    degenerate cover with no interior vertex: a single edge running from a
    boundary point on a cut end to the leaf, given as (cut id, edge id, weight).
    """

    pieces: tuple[PieceState, ...]
    arcs: tuple
    bare: tuple | None = None
    key: str = ""

    @property
    def cover_id(self) -> str:
        return hashlib.sha1(self.key.encode()).hexdigest()[:10]

    def state(self) -> State:
        return State(self.pieces, self.arcs)

    def edge_weight_product(self) -> int:
        return math.prod(w**c for (_, _, _, w), c in self.arcs)

    def boundary_count(self) -> int:
        if self.bare is not None:
            return 1
        return sum(len(b) for p in self.pieces for b in p.boundary)

    def betti_number(self) -> int:
        if self.bare is not None:
            return 0
        return sum(c for _, c in self.arcs) - len(self.pieces) + 1

    def genus(self) -> int:
        return self.betti_number() + sum(p.genus for p in self.pieces)

    def to_graph(self, mb: MarkedBase) -> TropicalGraph:
        """Expand into an explicit tropical curve with leaves and boundary points."""
        if self.bare is not None:
            cut_id, eid, _ = self.bare
            leaf = mb.base.edge[eid].head
            verts = (Vertex(f"b:{cut_id}:0", BOUNDARY), Vertex(f"l:{leaf}:0", LEAF))
            return TropicalGraph(verts, (Edge("e0", verts[0].id, verts[1].id),))
        verts = [Vertex(f"x{i}", INTERIOR, p.genus) for i, p in enumerate(self.pieces)]
        edges = []
        n = 0
        for (eid, t, h, w), c in self.arcs:
            for _ in range(c):
                edges.append(Edge(f"e{n}:{eid}:w{w}", f"x{t}", f"x{h}"))
                n += 1
        for i, p in enumerate(self.pieces):
            for j, (eid, _) in enumerate(mb.base.directions(p.vertex)):
                for kind, parts in ((LEAF, p.leaves[j]), (BOUNDARY, p.boundary[j])):
                    for w in parts:
                        vid = f"{kind[0]}{n}"
                        verts.append(Vertex(vid, kind))
                        edges.append(Edge(f"e{n}:{eid}:w{w}", f"x{i}", vid))
                        n += 1
        return TropicalGraph(tuple(verts), tuple(edges))


@dataclass(frozen=True)
class CoverTerm:
    cover: Cover
    multiplicity: Fraction
    aut_order: int


@dataclass(frozen=True)
class WeightedCount:
    total: Fraction
    per_cover: tuple[CoverTerm, ...] = field(default_factory=tuple)
    labeled_total: Fraction | None = None


def _cover_from_state(state: State) -> Cover:
    cert, canon = canonicalize(state)
    return Cover(canon.pieces, canon.arcs, None, repr(cert))


def _bare_covers(mb: MarkedBase) -> list[Cover]:
    """Covers without interior vertices: possible only when every interior chamber has degree 0."""
    positive = [cid for cid, deg in mb.chamber_degree.items() if deg > 0]
    if len(positive) != 1:
        return []
    for c in mb.cuts:
        e = mb.base.edge[c.edge]
        if mb.base.vertex[e.head].kind != LEAF:
            continue
        w = mb.degree_at(e.head)
        if mb.chambers.of_vertex[e.head] != positive[0] or mb.degree_at(e.tail) != 0:
            continue
        if c.profile == Partition([w]) and mb.leaf_requirement(e.head) == Partition([w]):
            return [Cover((), (), (c.id, e.id, w), repr(("bare", c.id, w)))]
    return []


def enumerate_covers(mb: MarkedBase, node_budget: int = DEFAULT_NODE_BUDGET) -> list[Cover]:
    """One cover per combinatorial type, sorted by canonical key."""
    check_valid(mb, allow=EMPTY_BUT_WELL_FORMED)
    if any(v.code in EMPTY_BUT_WELL_FORMED for v in validate(mb)):
        return []
    if all(mb.degree_at(v) == 0 for v in mb.base.interior):
        return _bare_covers(mb)
    states = CoverSearch(mb, node_budget).run(ordered=False)
    return sorted((_cover_from_state(s) for s in states), key=lambda h: h.key)


def aut_order_of_cover(h: Cover) -> int:
    """Automorphisms of the cover commuting with the projection.

    Piece bijections are found by backtracking; edges, leaf ends and boundary
    edges that share both endpoints and weight can then be permuted freely.
    """
    if h.bare is not None:
        return 1
    order = h.state().graph().count_automorphisms()
    return order * _edge_symmetry(h)


def _edge_symmetry(h: Cover) -> int:
    sym = math.prod(math.factorial(c) for _, c in h.arcs)
    for p in h.pieces:
        for parts in p.leaves + p.boundary:
            sym *= aut_order(parts)
    return sym


def aut_order_by_orbit(h: Cover) -> int:
    """Same group order, read off the canonical-labeling search tree."""
    if h.bare is not None:
        return 1
    _, _, hits = h.state().graph().canonical()
    return hits * _edge_symmetry(h)


def unnormalized_weight(h: Cover, max_degree: int = DEFAULT_MAX_DEGREE) -> Fraction:
    """m(h) * |Aut(h)|: inner edge weights times the local factors at every cover vertex."""
    weight = Fraction(h.edge_weight_product())
    for p in h.pieces:
        local = math.prod(aut_order(mu) for mu in p.profiles)
        weight *= local * local_sphere_hurwitz(p.degree, p.profiles, max_degree)
    return weight


def multiplicity(h: Cover, mb: MarkedBase | None = None, max_degree: int = DEFAULT_MAX_DEGREE) -> Fraction:
    return unnormalized_weight(h, max_degree) / aut_order_of_cover(h)


def tropical_open_hurwitz(
    mb: MarkedBase,
    *,
    max_degree: int = DEFAULT_MAX_DEGREE,
    node_budget: int = DEFAULT_NODE_BUDGET,
    cross_check: bool = False,
) -> WeightedCount:
    """Sum of multiplicities over all covers, with the per-cover breakdown.

    With ``cross_check`` the total is recomputed from the labeled search and
    an AssertionError is raised on disagreement.
    """
    terms = []
    for h in enumerate_covers(mb, node_budget):
        aut = aut_order_of_cover(h)
        terms.append(CoverTerm(h, unnormalized_weight(h, max_degree) / aut, aut))
    total = sum((t.multiplicity for t in terms), Fraction(0))
    labeled = None
    if cross_check:
        labeled = labeled_count(mb, max_degree=max_degree, node_budget=node_budget).weighted_total
        if labeled != total:
            raise AssertionError(f"labeled total {labeled} != quotient total {total}")
    return WeightedCount(total, tuple(terms), labeled)


@dataclass(frozen=True)
class LabeledCount:
    inverse_aut_total: Fraction  # sum over labeled structures of 1 / |labeled group| / edge symmetry
    weighted_total: Fraction
    orbit_sizes: dict
    group_orders: dict  # certificate -> prod over base vertices of (pieces there)!


def labeled_count(
    mb: MarkedBase, *, max_degree: int = DEFAULT_MAX_DEGREE, node_budget: int = DEFAULT_NODE_BUDGET
) -> LabeledCount:
    """Orbit counting over structures whose pieces are labeled per base vertex.

    The labeled group prod_v Sym(n_v) acts on these structures with stabilizer
    the piece automorphisms of the cover, so summing 1/(prod n_v! * edge
    symmetry) over labeled structures gives sum_h 1/|Aut(h)| without any
    canonical form.
    """
    check_valid(mb, allow=EMPTY_BUT_WELL_FORMED)
    if any(v.code in EMPTY_BUT_WELL_FORMED for v in validate(mb)):
        return LabeledCount(Fraction(0), Fraction(0), {}, {})
    if all(mb.degree_at(v) == 0 for v in mb.base.interior):
        bare = _bare_covers(mb)
        return LabeledCount(Fraction(len(bare)), Fraction(len(bare)), {h.key: 1 for h in bare}, {h.key: 1 for h in bare})
    inv = Fraction(0)
    weighted = Fraction(0)
    orbits: dict = defaultdict(int)
    groups: dict = {}
    for s in CoverSearch(mb, node_budget).run(ordered=True):
        h = Cover(s.pieces, s.arcs)
        group = math.prod(math.factorial(n) for n in Counter(p.vertex for p in s.pieces).values())
        share = Fraction(1, group * _edge_symmetry(h))
        inv += share
        weighted += share * unnormalized_weight(h, max_degree)
        key = repr(canonicalize(s)[0])
        orbits[key] += 1
        groups[key] = group
    return LabeledCount(inv, weighted, dict(orbits), groups)


def euler_characteristic_check(h: Cover, mb: MarkedBase) -> int:
    """chi(S_1) of the cover surface minus the Riemann-Hurwitz prediction (should be 0)."""
    chi_cover = 2 - 2 * h.genus() - h.boundary_count()
    base = mb.base
    ch = mb.chambers
    rhs = 0
    for cid, members in ch.members.items():
        inside = [e for e in base.edges if e.id not in mb.cut_on_edge and ch.of_vertex[e.tail] == cid]
        b1 = len(inside) - len(members) + 1
        sides = sum(
            (ch.of_vertex[base.edge[c.edge].tail] == cid) + (ch.of_vertex[base.edge[c.edge].head] == cid)
            for c in mb.cuts
        )
        points = sum(1 for q in mb.branches if ch.of_vertex[q] == cid)
        rhs += mb.chamber_degree.get(cid, 0) * (2 - 2 * b1 - sides - points)
    rhs += sum(len(nu) for nu in mb.branches.values())
    return chi_cover - rhs


def structural_violations(h: Cover, mb: MarkedBase) -> list[str]:
    """Balancing, local genus, fiber degrees and boundary data of one cover."""
    out = []
    if h.bare is not None:
        return out
    base = mb.base
    flow: dict = defaultdict(Counter)  # (piece, edge, side) -> weights of cover edges there
    for (eid, t, hd, w), c in h.arcs:
        flow[(t, eid, "tail")][w] += c
        flow[(hd, eid, "head")][w] += c
    fiber: dict = defaultdict(int)
    for i, p in enumerate(h.pieces):
        dirs = base.directions(p.vertex)
        fiber[("vertex", p.vertex)] += p.degree
        for j, (eid, side) in enumerate(dirs):
            ports = flow[(i, eid, side)] + Counter(p.leaves[j]) + Counter(p.boundary[j])
            if sum(w * c for w, c in ports.items()) != p.degree:
                out.append(f"piece {i} unbalanced along {eid}/{side}")
            if Partition(ports.elements()) != p.profiles[j]:
                out.append(f"piece {i} ports along {eid}/{side} differ from its profile")
            passing = sum(w * c for w, c in (flow[(i, eid, side)] + Counter(p.leaves[j])).items())
            fiber[("segment", eid, side)] += sum(p.boundary[j]) + passing
            fiber[("through", eid, side)] += passing
        if local_genus(p.degree, len(dirs), p.profiles) != p.genus:
            out.append(f"piece {i} violates the local Riemann-Hurwitz condition")
    for v in base.interior:
        if fiber[("vertex", v)] != mb.degree_at(v):
            out.append(f"fiber over {v} has degree {fiber[('vertex', v)]} != {mb.degree_at(v)}")
    for e in base.edges:
        cut = mb.cut_on_edge.get(e.id)
        head_is_leaf = base.vertex[e.head].kind == LEAF
        tail_deg = fiber[("segment", e.id, "tail")]
        if tail_deg != mb.degree_at(e.tail):
            out.append(f"segment of {e.id} at {e.tail} has degree {tail_deg}")
        far = fiber[("through", e.id, "tail")] if head_is_leaf else fiber[("segment", e.id, "head")]
        if far != mb.degree_at(e.head):
            out.append(f"segment of {e.id} at {e.head} has degree {far}")
        bnd = Partition(
            w for i, p in enumerate(h.pieces) for j, (eid, _) in enumerate(base.directions(p.vertex))
            if eid == e.id for w in p.boundary[j]
        )
        if bnd != (cut.profile if cut is not None else Partition()):
            out.append(f"boundary over {e.id} is {list(bnd)}")
        if head_is_leaf:
            ends = Partition(
                w for p in h.pieces for j, (eid, _) in enumerate(base.directions(p.vertex))
                if eid == e.id for w in p.leaves[j]
            )
            if ends != mb.leaf_requirement(e.head):
                out.append(f"ends over leaf {e.head} are {list(ends)}")
    graph = h.to_graph(mb)
    if not graph.is_connected():
        out.append("cover is not connected")
    if graph.genus() != h.genus():
        out.append("genus bookkeeping mismatch")
    return out
