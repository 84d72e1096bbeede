"""Isomorph-free generation of graphs of fixed order by edge augmentation.

Canonical augmentation: every graph with ``k + 1`` edges has one canonical
parent, obtained by deleting a canonically chosen edge ``e_c``.  A child
``X = P + e`` is kept only when ``e`` lies in the automorphism orbit of
``e_c`` in ``X``.  ``e_c`` is chosen among the edges maximising the
invariant ``(max endpoint degree, min endpoint degree, triangles through
the edge)``; all three parts are determined by the isomorphism class of
``X - e``, so most children are rejected before any canonical labelling.
Ties are broken by the canonical labelling of ``X``.

Children of a node are formed from one representative per orbit of
non-edges under the node's automorphism group, so siblings are distinct.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from .canon import CanonicalForm, canonical_labeling, edge_orbit
from .graph import Graph, SizeError, bits

log = logging.getLogger(__name__)

Predicate = Callable[[Graph], bool]


@dataclass(frozen=True)
class GenSpec:
    """What to generate: order, edge range, degree bounds and filters."""

    n: int
    e_min: int = 0
    e_max: int | None = None
    min_deg: int = 0
    max_deg: int | None = None
    predicates: tuple[Predicate, ...] = field(default=(), compare=False)

    @property
    def top(self) -> int:
        full = self.n * (self.n - 1) // 2
        return full if self.e_max is None else min(self.e_max, full)

    def satisfiable(self) -> str | None:
        """``None`` when the spec can be met, else the reason it cannot."""
        if not 0 <= self.n <= 13:
            return f"order {self.n} outside the supported range 0..13"
        if self.e_min > self.top:
            return f"edge range [{self.e_min}, {self.top}] is empty"
        if self.n and self.min_deg > self.n - 1:
            return f"minimum degree {self.min_deg} impossible on {self.n} vertices"
        if self.min_deg * self.n > 2 * self.top:
            return f"minimum degree {self.min_deg} needs more than {self.top} edges"
        if self.max_deg is not None and self.max_deg * self.n < 2 * self.e_min:
            return f"maximum degree {self.max_deg} cannot carry {self.e_min} edges"
        if self.max_deg is not None and self.max_deg < self.min_deg:
            return "maximum degree below minimum degree"
        return None


@dataclass
class Node:
    """A generated graph with its canonical labelling data."""

    graph: Graph
    code: int
    lab: list[int]
    gens: list[tuple[int, ...]]

    @property
    def form(self) -> CanonicalForm:
        perm = [0] * self.graph.n
        for i, v in enumerate(self.lab):
            perm[v] = i
        return CanonicalForm(self.graph.n, self.code, tuple(perm))

    def canonical_graph(self) -> Graph:
        return self.form.graph()


def make_node(g: Graph) -> Node:
    lab, code, gens = canonical_labeling(g)
    return Node(g, code, lab, gens)


def _nonedge_reps(g: Graph, gens) -> list[tuple[int, int]]:
    n = g.n
    adj = g.adj
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if not adj[u] >> v & 1]
    if not gens:
        return pairs
    seen: set = set()
    reps = []
    for p in pairs:
        if p in seen:
            continue
        reps.append(p)
        seen |= edge_orbit(p, gens)
    return reps


def _deficiency(degs: list[int], d: int) -> int:
    return sum(d - x for x in degs if x < d)


def children(node: Node, spec: GenSpec) -> Iterator[Node]:
    """Canonical children of ``node`` (one more edge) compatible with ``spec``."""
    g = node.graph
    n = g.n
    adj = g.adj
    degs = [a.bit_count() for a in adj]
    k = g.size
    top = spec.top
    remaining = top - k - 1  # edges still addable after this child
    dmax_parent = max(degs, default=0)
    min_deg = spec.min_deg
    max_deg = spec.max_deg
    deficit = _deficiency(degs, min_deg) if min_deg else 0
    seen_codes: set[int] = set()
    for u, v in _nonedge_reps(g, node.gens):
        du = degs[u] + 1
        dv = degs[v] + 1
        if max_deg is not None and (du > max_deg or dv > max_deg):
            continue
        if min_deg:
            fix = (degs[u] < min_deg) + (degs[v] < min_deg)
            if deficit - fix > 2 * remaining:
                continue
        hi, lo = (du, dv) if du >= dv else (dv, du)
        if hi < dmax_parent:
            continue
        # child adjacency
        cadj = list(adj)
        cadj[u] |= 1 << v
        cadj[v] |= 1 << u
        cdeg = degs[:]
        cdeg[u] = du
        cdeg[v] = dv
        hi_mask = 0
        lo_mask = 0
        gt_mask = 0
        for w in range(n):
            d = cdeg[w]
            if d == hi:
                hi_mask |= 1 << w
            if d == lo:
                lo_mask |= 1 << w
            elif d > lo:
                gt_mask |= 1 << w
        # some edge at a max-degree vertex has a larger second endpoint degree
        reject = False
        m = hi_mask
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            if cadj[w] & gt_mask:
                reject = True
                break
        if reject:
            continue
        tri = (cadj[u] & cadj[v]).bit_count()
        ties = []
        m = hi_mask
        while m:
            w = (m & -m).bit_length() - 1
            m &= m - 1
            xs = cadj[w] & lo_mask
            if hi == lo:
                xs &= ~((1 << w) - 1)  # count each edge once
            while xs:
                x = (xs & -xs).bit_length() - 1
                xs &= xs - 1
                if (w == u and x == v) or (w == v and x == u):
                    continue
                t = (cadj[w] & cadj[x]).bit_count()
                if t > tri:
                    reject = True
                    break
                if t == tri:
                    ties.append((w, x))
            if reject:
                break
        if reject:
            continue
        child = Graph.from_adjacency(cadj)
        lab, code, gens = canonical_labeling(child)
        if ties:
            pos = [0] * n
            for i, x in enumerate(lab):
                pos[x] = i
            cands = ties + [(u, v)]

            def key(e):
                a, b = pos[e[0]], pos[e[1]]
                return (a, b) if a < b else (b, a)

            ec = min(cands, key=key)
            if ec != (u, v) and ec != (v, u):
                e_new = (u, v) if u < v else (v, u)
                if not gens or e_new not in edge_orbit(ec, gens):
                    continue
        if code in seen_codes:
            continue
        seen_codes.add(code)
        yield Node(child, code, lab, gens)


def _accept(node: Node, spec: GenSpec) -> bool:
    g = node.graph
    if g.size < spec.e_min or g.size > spec.top:
        return False
    if spec.min_deg and g.mind() < spec.min_deg:
        return False
    return all(p(g) for p in spec.predicates)


def walk(node: Node, spec: GenSpec) -> Iterator[Node]:
    """Depth-first generation below ``node`` (inclusive) yielding matches."""
    if _accept(node, spec):
        yield node
    if node.graph.size >= spec.top:
        return
    stack = [children(node, spec)]
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            continue
        if _accept(nxt, spec):
            yield nxt
        if nxt.graph.size < spec.top:
            stack.append(children(nxt, spec))


def root(n: int) -> Node:
    if not 0 <= n <= 13:
        raise SizeError(f"generation supports 0..13 vertices, got {n}")
    return make_node(Graph(n))


def frontier(spec: GenSpec, depth: int) -> list[Node]:
    """All canonical nodes with exactly ``depth`` edges (breadth-first)."""
    level = [root(spec.n)]
    for _ in range(depth):
        nxt = []
        for node in level:
            nxt.extend(children(node, spec))
        level = nxt
    return level


def iter_generate(spec: GenSpec) -> Iterator[Node]:
    """Raw generation order (depth-first); no sorting."""
    reason = spec.satisfiable()
    if reason:
        log.warning("unsatisfiable generation spec: %s", reason)
        return iter(())
    return walk(root(spec.n), spec)


def generate(spec: GenSpec) -> Iterator[Node]:
    """Every isomorphism class matching ``spec`` exactly once.

    Output is grouped by edge count (ascending) and sorted by canonical code
    within each stratum.
    """
    strata: dict[int, list[Node]] = {}
    for node in iter_generate(spec):
        strata.setdefault(node.graph.size, []).append(node)
    for e in sorted(strata):
        yield from sorted(strata[e], key=lambda nd: nd.code)


def count(spec: GenSpec) -> int:
    return sum(1 for _ in iter_generate(spec))


def canonical_graphs(spec: GenSpec) -> list[Graph]:
    """Canonically labelled representatives, in :func:`generate` order."""
    return [nd.canonical_graph() for nd in generate(spec)]


def strata_counts(nodes: Iterable[Node]) -> dict[int, int]:
    out: dict[int, int] = {}
    for nd in nodes:
        out[nd.graph.size] = out.get(nd.graph.size, 0) + 1
    return out
