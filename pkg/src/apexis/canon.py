"""Canonical labelling by partition refinement and automorphism-pruned search.

The search tree is the usual individualise-and-refine tree.  A leaf is a
discrete ordered partition; the graph relabelled by it is encoded as an
integer whose bit ``j(j-1)/2 + i`` is the adjacency of ``(i, j)``, i.e. the
upper triangle in graph6 column order.  The canonical leaf is the one with
the largest code.  Automorphisms discovered along the way prune the tree in
two ways: orbit pruning among children of a node (using generators that fix
the node's individualised vertices), and jumping back to the divergence
level whenever a leaf reproduces the first or the best leaf.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .graph import Graph, bits

__all__ = [
    "CanonicalForm",
    "canonical_form",
    "canonical_labeling",
    "are_isomorphic",
    "orbits",
    "pair_index",
]


def pair_index(i: int, j: int) -> int:
    """Bit index of the unordered pair ``{i, j}`` in graph6 column order."""
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


@dataclass(frozen=True, order=True)
class CanonicalForm:
    """Relabelling-invariant certificate of an isomorphism class.

    ``code`` encodes the canonically labelled graph.  ``perm[v]`` is the
    canonical label of vertex ``v`` of the graph it was computed from; it is
    excluded from comparisons so forms of isomorphic graphs compare equal.
    """

    n: int
    code: int
    perm: tuple[int, ...] = field(default=(), compare=False)

    @property
    def key(self) -> tuple[int, int]:
        return (self.n, self.code)

    def graph(self) -> Graph:
        adj = [0] * self.n
        for j in range(1, self.n):
            base = j * (j - 1) // 2
            for i in range(j):
                if self.code >> (base + i) & 1:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        return Graph.from_adjacency(adj)


def _refine(cells: list[list[int]], adj: Sequence[int], splitters: list[int]) -> list[list[int]]:
    """Equitable refinement of ``cells`` (modified in place and returned)."""
    n_single = 0
    masks = []
    for c in cells:
        m = 0
        for v in c:
            m |= 1 << v
        masks.append(m)
        if len(c) == 1:
            n_single += 1
    total = len(cells)
    while splitters and n_single < total:
        w = splitters.pop()
        reach = 0
        x = w
        while x:
            low = x & -x
            reach |= adj[low.bit_length() - 1]
            x ^= low
        i = 0
        while i < total:
            cell = cells[i]
            if len(cell) == 1 or not masks[i] & reach:
                i += 1
                continue
            counts = [(adj[v] & w).bit_count() for v in cell]
            first = counts[0]
            for c in counts:
                if c != first:
                    break
            else:
                i += 1
                continue
            groups: dict[int, list[int]] = {}
            for v, c in zip(cell, counts):
                groups.setdefault(c, []).append(v)
            pieces = [groups[k] for k in sorted(groups)]
            pmasks = []
            for p in pieces:
                m = 0
                for v in p:
                    m |= 1 << v
                pmasks.append(m)
                splitters.append(m)
                if len(p) == 1:
                    n_single += 1
            cells[i : i + 1] = pieces
            masks[i : i + 1] = pmasks
            total += len(pieces) - 1
            i += len(pieces)
    return cells


def _leaf_code(lab_pos: list[int], edges: list[tuple[int, int]]) -> int:
    code = 0
    for u, v in edges:
        i = lab_pos[u]
        j = lab_pos[v]
        if i > j:
            i, j = j, i
        code |= 1 << (j * (j - 1) // 2 + i)
    return code


class _Search:
    def __init__(self, g: Graph):
        self.adj = g.adj
        self.n = g.n
        self.edges = g.edges()
        self.gens: list[tuple[int, ...]] = []
        self.first_path: list[int] | None = None
        self.first_lab: list[int] | None = None
        self.first_code = -1
        self.best_path: list[int] | None = None
        self.best_lab: list[int] | None = None
        self.best_code = -1

    def leaf(self, cells: list[list[int]], path: list[int]) -> int:
        lab = [c[0] for c in cells]
        pos = [0] * self.n
        for i, v in enumerate(lab):
            pos[v] = i
        code = _leaf_code(pos, self.edges)
        if self.first_lab is None:
            self.first_lab = self.best_lab = lab
            self.first_path = self.best_path = list(path)
            self.first_code = self.best_code = code
            return len(path)
        if code == self.first_code:
            self._add_gen(self.first_lab, lab)
            return _common_prefix(self.first_path, path)
        if code == self.best_code:
            self._add_gen(self.best_lab, lab)
            return _common_prefix(self.best_path, path)
        if code > self.best_code:
            self.best_code = code
            self.best_lab = lab
            self.best_path = list(path)
        return len(path)

    def _add_gen(self, lab_a: list[int], lab_b: list[int]) -> None:
        gamma = [0] * self.n
        for a, b in zip(lab_a, lab_b):
            gamma[a] = b
        self.gens.append(tuple(gamma))

    def run(self, cells: list[list[int]], path: list[int]) -> int:
        if len(cells) == self.n:
            return self.leaf(cells, path)
        depth = len(path)
        # target cell: first smallest non-singleton cell
        target = -1
        size = self.n + 1
        for idx, c in enumerate(cells):
            lc = len(c)
            if 1 < lc < size:
                target, size = idx, lc
                if lc == 2:
                    break
        cell = cells[target]
        tried: list[int] = []
        for v in cell:
            if tried and self._equivalent(v, tried, path):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1 :]
            child = _refine(child, self.adj, [1 << v])
            path.append(v)
            back = self.run(child, path)
            path.pop()
            if back < depth:
                return back
        return depth

    def _equivalent(self, v: int, tried: list[int], path: list[int]) -> bool:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        any_gen = False
        for gamma in self.gens:
            if all(gamma[p] == p for p in path):
                any_gen = True
                for x in range(self.n):
                    a, b = find(x), find(gamma[x])
                    if a != b:
                        parent[a] = b
        if not any_gen:
            return False
        r = find(v)
        return any(find(t) == r for t in tried)


def _common_prefix(a: list[int], b: list[int]) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


def _initial_cells(g: Graph, colors: Sequence[int] | None) -> list[list[int]]:
    if colors is None:
        return [list(range(g.n))] if g.n else []
    groups: dict = {}
    for v in range(g.n):
        groups.setdefault(colors[v], []).append(v)
    return [groups[k] for k in sorted(groups)]


def canonical_labeling(g: Graph, colors: Sequence[int] | None = None):
    """Canonical labelling of ``g``.

    Returns ``(lab, code, generators)``: ``lab[i]`` is the vertex receiving
    canonical label ``i``, ``code`` the canonical adjacency code and
    ``generators`` automorphisms (as image tuples) found by the search; they
    generate the automorphism group.  ``colors`` optionally fixes an
    ordered vertex colouring that labellings must respect.
    """
    if g.n == 0:
        return [], 0, []
    cells = _initial_cells(g, colors)
    splitters = []
    for c in cells:
        m = 0
        for v in c:
            m |= 1 << v
        splitters.append(m)
    cells = _refine(cells, g.adj, splitters)
    s = _Search(g)
    s.run(cells, [])
    return s.best_lab, s.best_code, s.gens


def canonical_form(g: Graph) -> CanonicalForm:
    lab, code, _ = canonical_labeling(g)
    perm = [0] * g.n
    for i, v in enumerate(lab):
        perm[v] = i
    return CanonicalForm(g.n, code, tuple(perm))


def are_isomorphic(g: Graph, h: Graph) -> tuple[int, ...] | None:
    """A permutation ``p`` with ``g.relabel(p) == h``, or ``None``."""
    if g.n != h.n or g.size != h.size or g.degree_sequence() != h.degree_sequence():
        return None
    fg = canonical_form(g)
    fh = canonical_form(h)
    if fg.code != fh.code:
        return None
    inv_h = [0] * h.n
    for v, c in enumerate(fh.perm):
        inv_h[c] = v
    return tuple(inv_h[fg.perm[v]] for v in range(g.n))


def orbits(n: int, gens: Sequence[Sequence[int]]) -> list[int]:
    """Orbit representative (least element) for each of ``0 .. n-1``."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for gamma in gens:
        for x in range(n):
            a, b = find(x), find(gamma[x])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [find(x) for x in range(n)]


def automorphism_generators(g: Graph) -> list[tuple[int, ...]]:
    return canonical_labeling(g)[2]


def edge_orbit(edge: tuple[int, int], gens: Sequence[Sequence[int]]) -> set[tuple[int, int]]:
    """Orbit of an unordered pair under the group generated by ``gens``."""
    a, b = edge
    start = (a, b) if a < b else (b, a)
    seen = {start}
    stack = [start]
    while stack:
        x, y = stack.pop()
        for gamma in gens:
            p, q = gamma[x], gamma[y]
            e = (p, q) if p < q else (q, p)
            if e not in seen:
                seen.add(e)
                stack.append(e)
    return seen


def mask_bits(mask: int) -> list[int]:
    return list(bits(mask))
