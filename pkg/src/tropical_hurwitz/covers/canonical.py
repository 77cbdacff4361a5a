"""Canonical labeling and automorphism counting for small decorated digraphs.

Nodes carry comparable labels; arcs are keyed by (tail, head, arc label) with
a multiplicity.  Canonical forms come from colour refinement followed by
individualization of the first non-singleton cell, exploring the whole search
tree (no automorphism pruning).  Because the tree is explored in full, the
leaves that achieve the minimal certificate form a single orbit of the
automorphism group, which gives its order for free.
"""

from __future__ import annotations

from collections import defaultdict


def _rank(keys) -> list[int]:
    order = {k: i for i, k in enumerate(sorted(set(keys)))}
    return [order[k] for k in keys]


class DecoratedDigraph:
    def __init__(self, labels, arcs):
        self.labels = list(labels)
        self.n = len(self.labels)
        self.arcs = dict(arcs)
        self.out_adj = [[] for _ in range(self.n)]
        self.in_adj = [[] for _ in range(self.n)]
        self.between: dict = defaultdict(list)
        for (t, h, lab), cnt in self.arcs.items():
            self.out_adj[t].append((lab, cnt, h))
            self.in_adj[h].append((lab, cnt, t))
            self.between[(t, h)].append((lab, cnt))
        self.between = {k: tuple(sorted(v)) for k, v in self.between.items()}

    def refine(self, colors: list[int]) -> list[int]:
        ncolors = len(set(colors))
        while True:
            sigs = [
                (
                    colors[x],
                    tuple(sorted((lab, cnt, colors[y]) for lab, cnt, y in self.out_adj[x])),
                    tuple(sorted((lab, cnt, colors[y]) for lab, cnt, y in self.in_adj[x])),
                )
                for x in range(self.n)
            ]
            colors = _rank(sigs)
            k = len(set(colors))
            if k == ncolors:
                return colors
            ncolors = k

    def initial_colors(self) -> list[int]:
        return self.refine(_rank(self.labels))

    def certificate(self, colors: list[int]):
        order = sorted(range(self.n), key=colors.__getitem__)
        arcs = tuple(sorted((colors[t], colors[h], lab, cnt) for (t, h, lab), cnt in self.arcs.items()))
        return tuple(self.labels[i] for i in order), arcs

    def canonical(self):
        """Return (certificate, canonical order of the nodes, automorphism count)."""
        best = None
        best_colors = None
        hits = 0
        stack = [self.initial_colors()]
        while stack:
            colors = stack.pop()
            cells: dict = defaultdict(list)
            for x, c in enumerate(colors):
                cells[c].append(x)
            target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
            if target is None:
                cert = self.certificate(colors)
                if best is None or cert < best:
                    best, best_colors, hits = cert, colors, 1
                elif cert == best:
                    hits += 1
                continue
            for x in target:
                split = _rank([(c, 0 if z == x else 1) for z, c in enumerate(colors)])
                stack.append(self.refine(split))
        if best is None:  # empty graph
            return ((), ()), [], 1
        order = sorted(range(self.n), key=best_colors.__getitem__)
        return best, order, hits

    def count_automorphisms(self) -> int:
        """Backtracking count of label- and arc-preserving node bijections."""
        colors = self.initial_colors()
        size: dict = defaultdict(int)
        for c in colors:
            size[c] += 1
        order = sorted(range(self.n), key=lambda x: (size[colors[x]], colors[x], x))
        image = [-1] * self.n
        used = [False] * self.n
        between = self.between

        def consistent(x, y) -> bool:
            if between.get((x, x), ()) != between.get((y, y), ()):
                return False
            for u in range(self.n):
                v = image[u]
                if v < 0 or u == x:
                    continue
                if between.get((x, u), ()) != between.get((y, v), ()):
                    return False
                if between.get((u, x), ()) != between.get((v, y), ()):
                    return False
            return True

        def extend(depth: int) -> int:
            if depth == self.n:
                return 1
            x = order[depth]
            total = 0
            for y in range(self.n):
                if used[y] or colors[y] != colors[x]:
                    continue
                if not consistent(x, y):
                    continue
                image[x], used[y] = y, True
                total += extend(depth + 1)
                image[x], used[y] = -1, False
            return total

        return extend(0)
