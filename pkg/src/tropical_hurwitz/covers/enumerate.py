"""Search for combinatorial types of tropical covers of a marked base.

A cover is assembled from local pieces: each cover vertex over a base vertex v
is a piece with a local degree and, for every half-edge of the base at v, a
partition of that degree (the weights of the cover edges leaving in that
direction).  Base vertices are processed in breadth-first order.  Choosing
the pieces over v fixes the multiset of weights in every direction; the base
edges that become closed at that step are then resolved:

* an inner edge matches the weighted ports of its two sides by a contingency
  table per weight;
* at a cut, the profile of the cut is split off as boundary ports on the
  higher-degree side first, the rest passes through;
* an end sends its ports to leaves, whose weights must equal the profile of
  the leaf (all ones for an unmarked leaf).

In quotient mode every partial structure is reduced to its isomorphism class
after each step, so isomorphic partial covers are extended only once.  In
labeled mode the pieces over a vertex form an ordered sequence and nothing
is merged; that mode feeds the orbit-counting cross-check.
"""

from __future__ import annotations

import itertools
from collections import Counter, deque
from typing import Iterator, NamedTuple

from ..partitions import Partition, partitions_of
from ..tropcurve import LEAF, MarkedBase, local_genus
from .canonical import DecoratedDigraph

DEFAULT_NODE_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    """The labeled search visited more nodes than the configured budget."""


class PieceState(NamedTuple):
    vertex: str
    degree: int
    genus: int
    profiles: tuple  # one Partition per base direction at ``vertex``
    boundary: tuple  # weights sent to boundary points, per direction
    leaves: tuple  # weights of ends sent to leaves, per direction


class State(NamedTuple):
    pieces: tuple
    arcs: tuple  # sorted ((edge id, tail piece, head piece, weight), count)

    def graph(self) -> DecoratedDigraph:
        return DecoratedDigraph(self.pieces, {(t, h, (e, w)): c for (e, t, h, w), c in self.arcs})


def canonicalize(state: State) -> tuple[tuple, State]:
    """Certificate of the isomorphism class and the state relabeled canonically."""
    cert, order, _ = state.graph().canonical()
    pos = {old: new for new, old in enumerate(order)}
    pieces = tuple(state.pieces[i] for i in order)
    arcs = tuple(sorted(((e, pos[t], pos[h], w), c) for (e, t, h, w), c in state.arcs))
    return cert, State(pieces, arcs)


def _multiset(parts) -> Counter:
    return Counter(parts)


def _sub_counter(big: Counter, small: Counter) -> Counter | None:
    out = Counter(big)
    for k, v in small.items():
        if out[k] < v:
            return None
        out[k] -= v
    return +out


def distribute(total: int, caps: list[int]) -> Iterator[tuple[int, ...]]:
    """All vectors x with 0 <= x_i <= caps_i and sum x = total."""
    if not caps:
        if total == 0:
            yield ()
        return
    rest_cap = sum(caps[1:])
    for first in range(max(0, total - rest_cap), min(caps[0], total) + 1):
        for tail in distribute(total - first, caps[1:]):
            yield (first,) + tail


def contingency_tables(rows: list[int], cols: list[int]) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Non-negative integer matrices with the given row and column sums."""
    if sum(rows) != sum(cols):
        return
    if not rows:
        yield ()
        return
    for first in distribute(rows[0], cols):
        remaining = [c - f for c, f in zip(cols, first)]
        for rest in contingency_tables(rows[1:], remaining):
            yield (first,) + rest


class CoverSearch:
    def __init__(self, mb: MarkedBase, node_budget: int = DEFAULT_NODE_BUDGET):
        self.mb = mb
        self.base = mb.base
        self.node_budget = node_budget
        self.nodes = 0
        self.dirs = {v: self.base.directions(v) for v in self.base.interior}
        self.dir_index = {v: {d: j for j, d in enumerate(ds)} for v, ds in self.dirs.items()}
        self.order = self._bfs_order()
        self.position = {v: i for i, v in enumerate(self.order)}
        self.closing = {v: [] for v in self.order}
        for e in self.base.edges:
            if self.base.vertex[e.head].kind == LEAF:
                self.closing[e.tail].append(e.id)
            else:
                later = max((e.tail, e.head), key=self.position.__getitem__)
                self.closing[later].append(e.id)
        self._types_cache: dict = {}

    def _bfs_order(self) -> list[str]:
        interior = sorted(self.base.interior)
        if not interior:
            return []
        seen = {interior[0]}
        queue = deque([interior[0]])
        out = []
        while queue:
            v = queue.popleft()
            out.append(v)
            nbrs = set()
            for eid, _ in self.dirs[v]:
                e = self.base.edge[eid]
                for w in (e.tail, e.head):
                    if w not in seen and self.base.vertex[w].kind != LEAF:
                        nbrs.add(w)
            for w in sorted(nbrs):
                seen.add(w)
                queue.append(w)
        return out

    def _tick(self, n: int = 1):
        self.nodes += n
        if self.nodes > self.node_budget:
            raise BudgetExceeded(f"cover search exceeded the node budget of {self.node_budget}")

    # -- piece selection -------------------------------------------------

    def _determined(self, state: State, v: str) -> list[Counter | None] | None:
        """Weight multiset forced in each direction at v, or None when free.

        Returns None overall when the constraints are already contradictory.
        """
        mb = self.mb
        out: list[Counter | None] = []
        for eid, side in self.dirs[v]:
            e = self.base.edge[eid]
            cut = mb.cut_on_edge.get(eid)
            if self.base.vertex[e.head].kind == LEAF:
                req = _multiset(mb.leaf_requirement(e.head))
                if cut is not None:
                    if mb.degree_at(v) < mb.degree_at(e.head):
                        return None
                    req = req + _multiset(cut.profile)
                out.append(req)
                continue
            other, oside = (e.head, "head") if side == "tail" else (e.tail, "tail")
            if e.is_loop or self.position[other] >= self.position[v]:
                out.append(None)
                continue
            j = self.dir_index[other][(eid, oside)]
            m = Counter()
            for p in state.pieces:
                if p.vertex == other:
                    m.update(p.profiles[j])
            if cut is not None:
                here, there = mb.degree_at(v), mb.degree_at(other)
                if here > there:
                    m = m + _multiset(cut.profile)
                elif here < there:
                    m = _sub_counter(m, _multiset(cut.profile))
                    if m is None:
                        return None
            out.append(+m)
        return out

    def _piece_types(self, v: str, allowed: list[Counter | None]) -> list[tuple[int, int, tuple]]:
        delta = self.mb.degree_at(v)
        ndir = len(self.dirs[v])
        key = (v, tuple(None if a is None else tuple(sorted(a.items())) for a in allowed))
        if key in self._types_cache:
            return self._types_cache[key]
        types = []
        for d in range(1, delta + 1):
            choices = []
            for a in allowed:
                opts = partitions_of(d)
                if a is not None:
                    opts = [p for p in opts if not (Counter(p) - a)]
                choices.append(opts)
            for profs in itertools.product(*choices):
                g = local_genus(d, ndir, profs)
                if g is not None:
                    types.append((d, g, tuple(profs)))
        self._types_cache[key] = types
        return types

    def _select(self, types, delta: int, allowed, ordered: bool) -> Iterator[tuple]:
        remaining = [None if a is None else Counter(a) for a in allowed]
        chosen: list = []

        def rec(start: int, left: int):
            if left == 0:
                if all(r is None or not +r for r in remaining):
                    yield tuple(chosen)
                return
            for i in range(0 if ordered else start, len(types)):
                d, g, profs = types[i]
                if d > left:
                    continue
                ok = True
                for r, p in zip(remaining, profs):
                    if r is not None:
                        r.subtract(p)
                        if any(r[x] < 0 for x in p):
                            ok = False
                if ok:
                    chosen.append(types[i])
                    yield from rec(i, left - d)
                    chosen.pop()
                for r, p in zip(remaining, profs):
                    if r is not None:
                        r.update(p)

        yield from rec(0, delta)

    # -- closing base edges ----------------------------------------------

    def _boundary_choices(self, ports: list[Counter], profile: Partition) -> Iterator[list[Counter]]:
        """Ways to take ``profile`` as boundary ports out of the given port multisets."""
        need = Counter(profile)
        weights = sorted(need)
        per_weight = []
        for w in weights:
            caps = [p[w] for p in ports]
            per_weight.append(list(distribute(need[w], caps)))
        for combo in itertools.product(*per_weight):
            taken = [Counter() for _ in ports]
            for w, split in zip(weights, combo):
                for i, k in enumerate(split):
                    if k:
                        taken[i][w] = k
            yield taken

    def _close_end(self, state: State, eid: str) -> Iterator[State]:
        mb = self.mb
        e = self.base.edge[eid]
        t, leaf = e.tail, e.head
        j = self.dir_index[t][(eid, "tail")]
        idx = [i for i, p in enumerate(state.pieces) if p.vertex == t]
        ports = [Counter(state.pieces[i].profiles[j]) for i in idx]
        cut = mb.cut_on_edge.get(eid)
        if cut is not None and mb.degree_at(t) < mb.degree_at(leaf):
            return
        profile = cut.profile if cut is not None else Partition()
        want = Counter(mb.leaf_requirement(leaf))
        for taken in self._boundary_choices(ports, profile):
            rest = [p - b for p, b in zip(ports, taken)]
            if sum(rest, Counter()) != want:
                continue
            pieces = list(state.pieces)
            for i, b, r in zip(idx, taken, rest):
                p = pieces[i]
                pieces[i] = p._replace(
                    boundary=_set(p.boundary, j, Partition(b.elements())),
                    leaves=_set(p.leaves, j, Partition(r.elements())),
                )
            self._tick()
            yield State(tuple(pieces), state.arcs)

    def _close_inner(self, state: State, eid: str) -> Iterator[State]:
        mb = self.mb
        e = self.base.edge[eid]
        jt = self.dir_index[e.tail][(eid, "tail")]
        jh = self.dir_index[e.head][(eid, "head")]
        tails = [i for i, p in enumerate(state.pieces) if p.vertex == e.tail]
        heads = [i for i, p in enumerate(state.pieces) if p.vertex == e.head]
        tports = [Counter(state.pieces[i].profiles[jt]) for i in tails]
        hports = [Counter(state.pieces[i].profiles[jh]) for i in heads]
        cut = mb.cut_on_edge.get(eid)
        dt, dh = mb.degree_at(e.tail), mb.degree_at(e.head)
        bside = None
        choices: Iterator = iter([None])
        if cut is not None and cut.profile:
            if dt > dh:
                bside, choices = "tail", self._boundary_choices(tports, cut.profile)
            elif dh > dt:
                bside, choices = "head", self._boundary_choices(hports, cut.profile)
            else:
                return
        for taken in choices:
            pieces = list(state.pieces)
            tp, hp = tports, hports
            if bside == "tail":
                tp = [p - b for p, b in zip(tports, taken)]
                for i, b in zip(tails, taken):
                    pieces[i] = pieces[i]._replace(boundary=_set(pieces[i].boundary, jt, Partition(b.elements())))
            elif bside == "head":
                hp = [p - b for p, b in zip(hports, taken)]
                for i, b in zip(heads, taken):
                    pieces[i] = pieces[i]._replace(boundary=_set(pieces[i].boundary, jh, Partition(b.elements())))
            if sum(tp, Counter()) != sum(hp, Counter()):
                continue
            weights = sorted(set(sum(tp, Counter())))
            tables = [
                list(contingency_tables([p[w] for p in tp], [p[w] for p in hp]))
                for w in weights
            ]
            for combo in itertools.product(*tables):
                arcs = dict(state.arcs)
                for w, table in zip(weights, combo):
                    for a, row in enumerate(table):
                        for b, cnt in enumerate(row):
                            if cnt:
                                arcs[(eid, tails[a], heads[b], w)] = cnt
                self._tick()
                yield State(tuple(pieces), tuple(sorted(arcs.items())))

    # -- driver ------------------------------------------------------------

    def _step(self, state: State, v: str, ordered: bool) -> Iterator[State]:
        allowed = self._determined(state, v)
        if allowed is None:
            return
        types = self._piece_types(v, allowed)
        ndir = len(self.dirs[v])
        empty = tuple(Partition() for _ in range(ndir))
        for chosen in self._select(types, self.mb.degree_at(v), allowed, ordered):
            self._tick()
            new = tuple(PieceState(v, d, g, profs, empty, empty) for d, g, profs in chosen)
            states = [State(state.pieces + new, state.arcs)]
            for eid in self.closing[v]:
                e = self.base.edge[eid]
                closer = self._close_end if self.base.vertex[e.head].kind == LEAF else self._close_inner
                states = [s2 for s in states for s2 in closer(s, eid)]
                if not states:
                    break
            yield from states

    def run(self, ordered: bool = False) -> list[State]:
        """All connected structures: one per isomorphism class, or every labeled one."""
        states = [State((), ())]
        for v in self.order:
            nxt = []
            seen = set()
            for s in states:
                for s2 in self._step(s, v, ordered):
                    if ordered:
                        nxt.append(s2)
                        continue
                    cert, canon = canonicalize(s2)
                    if cert not in seen:
                        seen.add(cert)
                        nxt.append(canon)
            states = nxt
        return [s for s in states if s.pieces and _connected(s)]


def _set(tup: tuple, j: int, value) -> tuple:
    return tup[:j] + (value,) + tup[j + 1:]


def _connected(state: State) -> bool:
    n = len(state.pieces)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (_, t, h, _), _ in state.arcs:
        parent[find(t)] = find(h)
    return len({find(i) for i in range(n)}) == 1
