"""Tropical curves with boundary, marked base curves and local Riemann-Hurwitz data.

Metric data is not stored anywhere: a minimal morphism unramified off the
branch leaves is determined by its combinatorial type, so every algorithm in
this package works with graphs, weights and genera only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .partitions import Partition

INTERIOR = "interior"
LEAF = "leaf"
BOUNDARY = "boundary"
KINDS = (INTERIOR, LEAF, BOUNDARY)


@dataclass(frozen=True)
class Vertex:
    id: str
    kind: str = INTERIOR
    genus: int = 0


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class TropicalGraph:
    """Finite graph with leaves, boundary points and vertex genera.

    Parallel edges and loops are allowed; edges are told apart by id.
    """

    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    @cached_property
    def vertex(self) -> dict[str, Vertex]:
        return {v.id: v for v in self.vertices}

    @cached_property
    def edge(self) -> dict[str, Edge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _incidence(self) -> dict[str, list[tuple[str, str]]]:
        inc: dict[str, list[tuple[str, str]]] = {v.id: [] for v in self.vertices}
        for e in self.edges:
            if e.tail in inc:
                inc[e.tail].append((e.id, "tail"))
            if e.head in inc:
                inc[e.head].append((e.id, "head"))
        return {v: sorted(ds) for v, ds in inc.items()}

    def directions(self, v: str) -> list[tuple[str, str]]:
        """Half-edges at ``v`` as (edge id, side); a loop contributes both sides."""
        return self._incidence[v]

    def valence(self, v: str) -> int:
        return len(self._incidence[v])

    def ids_of_kind(self, kind: str) -> list[str]:
        return [v.id for v in self.vertices if v.kind == kind]

    @property
    def interior(self) -> list[str]:
        return self.ids_of_kind(INTERIOR)

    @property
    def leaves(self) -> list[str]:
        return self.ids_of_kind(LEAF)

    @property
    def boundary(self) -> list[str]:
        return self.ids_of_kind(BOUNDARY)

    def is_connected(self) -> bool:
        if not self.vertices:
            return False
        return len(components([v.id for v in self.vertices], [(e.tail, e.head) for e in self.edges])) == 1

    def betti_number(self) -> int:
        ncomp = len(components([v.id for v in self.vertices], [(e.tail, e.head) for e in self.edges]))
        return len(self.edges) - len(self.vertices) + ncomp

    def genus(self) -> int:
        return self.betti_number() + sum(v.genus for v in self.vertices if v.kind == INTERIOR)

    def is_explicit(self) -> bool:
        return all(v.genus == 0 for v in self.vertices)

    def violations(self) -> list[str]:
        """Conditions for an irreducible tropical curve with boundary."""
        out = []
        if not self.edges:
            out.append("edge set is empty")
        ids = [v.id for v in self.vertices]
        if len(set(ids)) != len(ids):
            out.append("duplicate vertex ids")
        eids = [e.id for e in self.edges]
        if len(set(eids)) != len(eids):
            out.append("duplicate edge ids")
        for e in self.edges:
            for end in (e.tail, e.head):
                if end not in self.vertex:
                    out.append(f"edge {e.id} references unknown vertex {end}")
        if out:
            return out
        if not self.is_connected():
            out.append("graph is not connected")
        for v in self.vertices:
            if v.kind not in KINDS:
                out.append(f"vertex {v.id} has unknown kind {v.kind!r}")
            val = self.valence(v.id)
            if v.genus < 0:
                out.append(f"vertex {v.id} has negative genus")
            if v.kind == INTERIOR:
                if val < 2:
                    out.append(f"interior vertex {v.id} has valence {val}")
                elif val == 2 and v.genus < 1:
                    out.append(f"2-valent vertex {v.id} has genus 0")
            else:
                if val != 1:
                    out.append(f"{v.kind} vertex {v.id} has valence {val}, expected 1")
                if v.genus != 0:
                    out.append(f"{v.kind} vertex {v.id} carries genus {v.genus}")
        return out


def components(nodes: Iterable, links: Iterable[tuple]) -> list[frozenset]:
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in links:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    groups: dict = {}
    for n in parent:
        groups.setdefault(find(n), set()).add(n)
    return [frozenset(g) for g in groups.values()]


@dataclass(frozen=True)
class Cut:
    """A marked point in the interior of a base edge, with its boundary profile."""

    id: str
    edge: str
    profile: Partition = field(default_factory=Partition)

    def __post_init__(self):
        object.__setattr__(self, "profile", Partition(self.profile))


@dataclass(frozen=True)
class Chambers:
    """Connected components of the base with the cut points removed."""

    members: Mapping[str, frozenset]  # chamber id -> vertex ids
    of_vertex: Mapping[str, str]

    def of_half(self, base: TropicalGraph, edge_id: str, side: str) -> str:
        e = base.edge[edge_id]
        return self.of_vertex[e.tail if side == "tail" else e.head]

    def __len__(self):
        return len(self.members)


def chambers(base: TropicalGraph, cuts: Iterable[Cut]) -> Chambers:
    """Split ``base`` at the cut points; chambers are named by their smallest vertex id."""
    cut_edges = set()
    for c in cuts:
        if c.edge not in base.edge:
            raise ValueError(f"cut {c.id} lies on unknown edge {c.edge}")
        cut_edges.add(c.edge)
    links = [(e.tail, e.head) for e in base.edges if e.id not in cut_edges]
    groups = components(sorted(base.vertex), links)
    members = {min(g): g for g in groups}
    of_vertex = {v: cid for cid, g in members.items() for v in g}
    return Chambers(dict(sorted(members.items())), of_vertex)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


class InvalidInstance(ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(map(str, self.violations)))


@dataclass(frozen=True)
class MarkedBase:
    """A closed explicit base curve with cut points, branch leaves and chamber degrees.

    ``degrees`` may be keyed by any vertex (interior or leaf) of the chamber.
    """

    base: TropicalGraph
    cuts: tuple[Cut, ...] = ()
    branches: Mapping[str, Partition] = field(default_factory=dict)
    degrees: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "cuts", tuple(sorted(self.cuts, key=lambda c: c.id)))
        object.__setattr__(self, "branches", {q: Partition(p) for q, p in sorted(self.branches.items())})
        object.__setattr__(self, "degrees", dict(sorted(self.degrees.items())))

    @cached_property
    def chambers(self) -> Chambers:
        return chambers(self.base, self.cuts)

    @cached_property
    def cut_on_edge(self) -> dict[str, Cut]:
        return {c.edge: c for c in self.cuts}

    @cached_property
    def chamber_degree(self) -> dict[str, int]:
        out = {}
        for v, deg in self.degrees.items():
            if v in self.chambers.of_vertex:
                out.setdefault(self.chambers.of_vertex[v], deg)
        return out

    def degree_at(self, v: str) -> int:
        return self.chamber_degree.get(self.chambers.of_vertex[v], 0)

    def side_degree(self, edge_id: str, side: str) -> int:
        e = self.base.edge[edge_id]
        return self.degree_at(e.tail if side == "tail" else e.head)

    def gamma(self, cut: Cut) -> int:
        return abs(self.side_degree(cut.edge, "tail") - self.side_degree(cut.edge, "head"))

    @property
    def is_closed(self) -> bool:
        return not self.cuts

    def leaf_requirement(self, leaf: str) -> Partition:
        """Weights of the cover ends above ``leaf``: its profile, or all ones when unmarked."""
        if leaf in self.branches:
            return self.branches[leaf]
        return Partition([1] * self.degree_at(leaf))

    def to_dict(self) -> dict:
        return {
            "vertices": self.base.interior,
            "leaves": self.base.leaves,
            "edges": [[e.id, e.tail, e.head] for e in self.base.edges],
            "cuts": [[c.id, c.edge, list(c.profile)] for c in self.cuts],
            "branches": {q: list(p) for q, p in self.branches.items()},
            "degrees": dict(self.degrees),
        }


def base_graph(interior: Iterable[str], leaves: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> TropicalGraph:
    """Build a genus-0-vertex base graph; ends are oriented towards their leaf."""
    leaves = list(leaves)
    leafset = set(leaves)
    out = []
    for eid, a, b in edges:
        if a in leafset and b not in leafset:
            a, b = b, a
        out.append(Edge(eid, a, b))
    verts = [Vertex(v, INTERIOR, 0) for v in interior] + [Vertex(q, LEAF, 0) for q in leaves]
    return TropicalGraph(tuple(verts), tuple(out))


def validate(mb: MarkedBase) -> list[Violation]:
    """Every condition on the marking data; an empty list means the instance is usable."""
    out: list[Violation] = []
    base = mb.base
    for msg in base.violations():
        out.append(Violation("structure", msg))
    if out:
        return out
    if base.boundary:
        out.append(Violation("structure", "base curve must be closed (no boundary points)"))
    if not base.is_explicit():
        out.append(Violation("structure", "base curve must be explicit (all vertex genera 0)"))
    if not base.interior:
        out.append(Violation("structure", "base curve has no interior vertex"))
    for e in base.edges:
        if base.vertex[e.head].kind == LEAF and base.vertex[e.tail].kind == LEAF:
            out.append(Violation("structure", f"edge {e.id} joins two leaves"))
        if base.vertex[e.tail].kind == LEAF:
            out.append(Violation("structure", f"end {e.id} must be oriented towards its leaf"))

    seen_edges: dict[str, str] = {}
    ids = set()
    for c in mb.cuts:
        if c.id in ids or c.id in base.vertex:
            out.append(Violation("cut", f"duplicate id {c.id}"))
        ids.add(c.id)
        if c.edge not in base.edge:
            out.append(Violation("cut", f"cut {c.id} lies on unknown edge {c.edge}"))
        elif c.edge in seen_edges:
            out.append(Violation("chamber", f"cuts {seen_edges[c.edge]} and {c.id} on edge {c.edge} bound a chamber without vertex"))
        else:
            seen_edges[c.edge] = c.id
    if out:
        return out

    ch = mb.chambers
    claimed: dict[str, str] = {}
    for v, deg in mb.degrees.items():
        if v not in ch.of_vertex:
            out.append(Violation("degree", f"degree given for unknown vertex {v}"))
            continue
        cid = ch.of_vertex[v]
        if cid in claimed:
            out.append(Violation("degree", f"chamber {cid} given two degrees (via {claimed[cid]} and {v})"))
        claimed[cid] = v
        if not isinstance(deg, int) or deg < 0:
            out.append(Violation("degree", f"degree of chamber {cid} must be a non-negative integer"))
    for cid in ch.members:
        if cid not in claimed:
            out.append(Violation("degree", f"chamber {cid} has no degree"))
    if out:
        return out

    for q, nu in mb.branches.items():
        if q not in base.vertex or base.vertex[q].kind != LEAF:
            out.append(Violation("branch", f"branch point {q} is not a leaf"))
            continue
        delta = mb.degree_at(q)
        if nu.size != delta:
            out.append(Violation("profile-sum", f"profile of {q} sums to {nu.size} != delta={delta}"))
    for c in mb.cuts:
        g = mb.gamma(c)
        if c.profile.size != g:
            out.append(Violation("profile-sum", f"profile of cut {c.id} sums to {c.profile.size} != gamma={g}"))
    return out


def check_valid(mb: MarkedBase, allow=()) -> MarkedBase:
    bad = [v for v in validate(mb) if v.code not in allow]
    if bad:
        raise InvalidInstance(bad)
    return mb


def local_genus(d: int, valence: int, profiles) -> int | None:
    """Genus forced at a cover vertex unramified over an explicit base vertex.

    Equality in the Riemann-Hurwitz condition gives g = (2 - k + d(l - 2)) / 2,
    k being the total number of parts; returns None when that is not a
    non-negative integer.
    """
    profiles = [Partition(p) for p in profiles]
    if len(profiles) != valence or any(p.size != d for p in profiles):
        raise ValueError("need one partition of d per base direction")
    k = sum(len(p) for p in profiles)
    twice = 2 - k + d * (valence - 2)
    if twice < 0 or twice % 2:
        return None
    return twice // 2
