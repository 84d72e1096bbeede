"""l-apex recognition with certificates.

A graph is l-apex when deleting some set of at most ``l`` vertices leaves it
planar.  Deleting more vertices never hurts planarity, so only sets of size
exactly ``min(l, n)`` need testing; smaller sets are covered by their
supersets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .graph import (
    Graph,
    GraphError,
    PreconditionError,
    bits,
    delete_vertices,
    multigraph_simplify,
    Multigraph,
    reduce_mask,
)
from .planarity import (
    MinorModel,
    PlanarEmbedding,
    embed,
    kuratowski_model,
    nonplanar_edge_lower_bound,
    planar_mask,
)

__all__ = [
    "ApexCertificate",
    "NonApexVerdict",
    "GenK33Partition",
    "is_l_apex",
    "is_apex",
    "apex_bruteforce",
    "apex_pairs",
    "candidate_sets",
    "genk33",
    "w_set_shortcut",
]


@dataclass(frozen=True)
class ApexCertificate:
    """Apex set ``S`` (original labels) and an embedding of ``G - S``.

    ``embedding`` uses the contiguous labels of ``delete_vertices(G, S)``;
    ``keep`` maps those labels back to the original vertices.
    """

    l: int
    apex_set: tuple[int, ...]
    embedding: PlanarEmbedding
    keep: tuple[int, ...]

    def verify(self, g: Graph) -> bool:
        if len(self.apex_set) > self.l:
            return False
        h, keep = delete_vertices(g, self.apex_set)
        return tuple(keep) == self.keep and self.embedding.verify(h)

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Exhausted:
    """One candidate set shown non-planar, by minor model or edge count."""

    apex_set: tuple[int, ...]
    model: MinorModel | None = None
    reason: str = ""


@dataclass(frozen=True)
class PrunedBlock:
    """A tail of the candidate order dismissed by one counting argument."""

    sets: tuple[tuple[int, ...], ...]
    reason: str


@dataclass(frozen=True)
class NonApexVerdict:
    """Evidence that no set of at most ``l`` vertices planarises ``G``."""

    l: int
    records: tuple[Exhausted, ...]
    pruned: tuple[PrunedBlock, ...] = ()
    size: int = 0  # the set size tested; smaller sets are dominated

    def __bool__(self) -> bool:
        return False

    def covered(self) -> set[tuple[int, ...]]:
        out = {r.apex_set for r in self.records}
        for block in self.pruned:
            out.update(block.sets)
        return out

    def verify(self, g: Graph) -> bool:
        want = {tuple(c) for c in combinations(range(g.n), self.size)}
        if self.size != min(self.l, g.n) or self.covered() != want:
            return False
        for r in self.records:
            h, keep = delete_vertices(g, r.apex_set)
            if r.model is not None:
                removed = set(r.apex_set)
                if any(v in removed for bs in r.model.branch_sets for v in bs):
                    return False
                if not r.model.verify(g):
                    return False
            elif not _edge_excess(h):
                return False
        for block in self.pruned:
            for s in block.sets:
                h, _ = delete_vertices(g, s)
                if not _edge_excess(h):
                    return False
        return True


def _edge_excess(h: Graph) -> bool:
    """True when ``h`` has more edges than any planar graph of its order."""
    return h.n >= 3 and h.size > 3 * h.n - 6


def candidate_sets(g: Graph, k: int) -> list[tuple[int, ...]]:
    """All ``k``-sets ordered by decreasing degree sum, then lexicographically."""
    deg = g.degrees()
    sets = list(combinations(range(g.n), k))
    sets.sort(key=lambda s: (-sum(deg[v] for v in s), s))
    return sets


def _first_planar_set(g: Graph, k: int) -> tuple[int, ...] | None:
    """First candidate set (in candidate order) whose deletion is planar."""
    adj = g.adj
    full = g.vertex_mask()
    m = g.size
    deg = g.degrees()
    cap = 3 * (g.n - k) - 6
    for s in candidate_sets(g, k):
        removed = 0
        dsum = 0
        for v in s:
            removed |= 1 << v
            dsum += deg[v]
        if g.n - k >= 3 and m - dsum > cap:
            # every later set has no larger degree sum
            return None
        mask = full & ~removed
        lost = dsum - sum((adj[v] & removed).bit_count() for v in s) // 2
        if _quick_planar(m - lost, adj, mask):
            return s
        if planar_mask(adj, mask):
            return s
    return None


def _quick_planar(edges: int, adj: Sequence[int], mask: int) -> bool:
    """Planar by the edge bound for non-planar graphs without isolated vertices."""
    if edges < 9:
        return True
    live = 0
    for v in bits(mask):
        if adj[v] & mask:
            live += 1
    if live < 5:
        return True
    if live == 5:
        return edges < 10
    return edges < nonplanar_edge_lower_bound(live)


def is_apex(g: Graph, l: int) -> bool:
    """Boolean l-apex test (no certificate)."""
    if not 0 <= l <= 3:
        raise GraphError(f"l must be in 0..3, got {l}")
    radj, alive, _ = reduce_mask(g.adj, g.vertex_mask())
    h, _ = Graph.from_adjacency(radj).induced(alive)
    if h.n <= l:
        return True
    return _first_planar_set(h, l) is not None


def is_l_apex(g: Graph, l: int) -> ApexCertificate | NonApexVerdict:
    """Decide whether ``g`` is ``l``-apex, with a certificate either way.

    The search runs on the topological reduction of ``g`` (same answer);
    a positive answer is re-derived on ``g`` itself so the embedding is of
    ``g - S``.  A negative answer exhausts the candidate sets of ``g``.
    """
    if not 0 <= l <= 3:
        raise GraphError(f"l must be in 0..3, got {l}")
    radj, alive, _ = reduce_mask(g.adj, g.vertex_mask())
    h, keep = Graph.from_adjacency(radj).induced(alive)
    k = min(l, g.n)
    if h.n <= l:
        # any set containing the survivors works; pad in candidate order
        s = set(keep[:])
        for v in (c[0] for c in candidate_sets(g, 1)):
            if len(s) >= k:
                break
            s.add(v)
        return _certificate(g, l, tuple(sorted(s)))
    found = _first_planar_set(h, l)
    if found is not None:
        return _certificate(g, l, tuple(sorted(keep[v] for v in found)))
    return _exhaust(g, l)


def _certificate(g: Graph, l: int, s: tuple[int, ...]) -> ApexCertificate:
    sub, keep = delete_vertices(g, s)
    emb = embed(sub)
    if emb is None:
        raise AssertionError(f"apex set {s} does not planarise the graph")
    return ApexCertificate(l, s, emb, tuple(keep))


def _exhaust(g: Graph, l: int) -> ApexCertificate | NonApexVerdict:
    k = min(l, g.n)
    deg = g.degrees()
    m = g.size
    records = []
    pruned = []
    sets = candidate_sets(g, k)
    for idx, s in enumerate(sets):
        dsum = sum(deg[v] for v in s)
        sub, keep = delete_vertices(g, s)
        if sub.n >= 3 and m - dsum > 3 * sub.n - 6:
            tail = tuple(sets[idx:])
            pruned.append(PrunedBlock(
                tail,
                f"at least {m - dsum} edges survive on {sub.n} vertices, above 3n-6 = {3 * sub.n - 6}",
            ))
            break
        if _edge_excess(sub):
            records.append(Exhausted(s, None, f"{sub.size} edges > 3n-6 = {3 * sub.n - 6}"))
            continue
        emb = embed(sub)
        if emb is not None:
            return ApexCertificate(l, s, emb, tuple(keep))
        model = kuratowski_model(sub)
        lifted = MinorModel(
            model.pattern,
            tuple(tuple(sorted(keep[v] for v in bs)) for bs in model.branch_sets),
            tuple((pe, (keep[x], keep[y])) for pe, (x, y) in model.witnesses),
        )
        records.append(Exhausted(s, lifted))
    return NonApexVerdict(l, tuple(records), tuple(pruned), k)


def apex_bruteforce(g: Graph, l: int) -> bool:
    """Unpruned oracle: try every vertex set of size at most ``l``."""
    full = g.vertex_mask()
    for k in range(0, min(l, g.n) + 1):
        for s in combinations(range(g.n), k):
            mask = full
            for v in s:
                mask &= ~(1 << v)
            sub, _ = g.induced(mask)
            if embed(sub) is not None:
                return True
    return False


def apex_pairs(g: Graph) -> list[tuple[int, int]]:
    """All pairs ``(a, b)``, ``a < b``, with ``g - a,b`` planar."""
    full = g.vertex_mask()
    return [(a, b) for a, b in combinations(range(g.n), 2)
            if planar_mask(g.adj, full & ~(1 << a) & ~(1 << b))]


# ---------------------------------------------------------------------------
# generalised K3,3


@dataclass(frozen=True)
class GenK33Partition:
    """Five trees ``V2, V3, W1, W2, W3`` covering ``G - v`` (original labels).

    ``trees`` lists extra tree components of ``G - v``; they are empty unless
    the partition was requested with ``allow_tree_components``.
    """

    apex: int
    v2: tuple[int, ...]
    v3: tuple[int, ...]
    w: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]
    trees: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def sets(self) -> tuple[tuple[int, ...], ...]:
        return (self.v2, self.v3) + self.w

    def verify(self, g: Graph) -> bool:
        """Check the partition against ``g`` (the graph containing ``apex``)."""
        sets = self.sets
        cover = [v for s in sets for v in s] + [v for t in self.trees for v in t]
        rest = sorted(set(range(g.n)) - {self.apex})
        if sorted(cover) != rest or len(cover) != len(set(cover)):
            return False
        masks = []
        for s in sets:
            m = 0
            for v in s:
                m |= 1 << v
            masks.append(m)
            sub, _ = g.induced(m)
            if not s or not sub.is_connected() or sub.size != sub.n - 1:
                return False
        for t in self.trees:
            m = 0
            for v in t:
                m |= 1 << v
            sub, _ = g.induced(m)
            if not sub.is_connected() or sub.size != sub.n - 1:
                return False
            if any(g.adj[v] & ~m & ~(1 << self.apex) for v in t):
                return False
        # contracted multigraph must be exactly K3,3 - v1
        count = {}
        for i in range(5):
            for j in range(i + 1, 5):
                c = 0
                for v in sets[i]:
                    c += (g.adj[v] & masks[j]).bit_count()
                count[(i, j)] = c
        want = {(i, j): 0 for i in range(5) for j in range(i + 1, 5)}
        for i in (2, 3, 4):
            want[(0, i)] = 1
            want[(1, i)] = 1
        return count == want


def genk33(g: Graph, v: int, allow_tree_components: bool = False) -> GenK33Partition | None:
    """Generalised K3,3 partition of ``(g; v)``, or ``None``.

    ``g - v`` must simplify (keeping multiplicities) to the theta multigraph,
    the simplification of ``K3,3 - v1``.  The partition returned has
    ``|V2| + |V3|`` minimal: each ``Wi`` takes the whole interior of one
    branch path together with the trees hanging from it.
    """
    if not 0 <= v < g.n:
        raise GraphError(f"unknown vertex {v}")
    sub, keep = delete_vertices(g, [v])
    comps = sub.components()
    trees = []
    core_comp = None
    for c in comps:
        cs, _ = sub.induced(c)
        if cs.size == cs.n - 1:
            trees.append(c)
        elif core_comp is None:
            core_comp = c
        else:
            return None
    if core_comp is None or (trees and not allow_tree_components):
        return None
    part, cmap = sub.induced(core_comp)
    simplified, _, _ = multigraph_simplify(Multigraph.from_graph(part))
    if simplified.n != 2 or simplified.edges != (((0, 1), 3),):
        return None
    # strip pendant trees to find the theta core, remembering attachments
    adj = list(part.adj)
    alive = part.vertex_mask()
    hang: dict[int, list[int]] = {x: [x] for x in range(part.n)}
    changed = True
    while changed:
        changed = False
        for x in bits(alive):
            if (adj[x] & alive).bit_count() == 1:
                y = (adj[x] & alive).bit_length() - 1
                hang[y].extend(hang.pop(x))
                alive &= ~(1 << x)
                changed = True
    branch = [x for x in bits(alive) if (adj[x] & alive).bit_count() == 3]
    if len(branch) != 2:
        return None
    x0, y0 = branch
    interiors = []
    for first in bits(adj[x0] & alive):
        prev, cur = x0, first
        inner = []
        while cur not in (x0, y0):
            inner.append(cur)
            nxt = adj[cur] & alive & ~(1 << prev)
            prev, cur = cur, nxt.bit_length() - 1
        if cur != y0 or not inner:
            return None
        interiors.append(inner)

    def expand(vs):
        out = []
        for x in vs:
            out.extend(hang[x])
        return tuple(sorted(keep[cmap[x]] for x in out))

    side_x = expand([x0])
    side_y = expand([y0])
    v2, v3 = sorted([side_x, side_y], key=lambda s: (len(s), s))
    ws = sorted((expand(inner) for inner in interiors), key=lambda s: (-len(s), s))
    tree_sets = tuple(tuple(sorted(keep[x] for x in bits(t))) for t in trees)
    return GenK33Partition(v, v2, v3, (ws[0], ws[1], ws[2]), tree_sets)


def w_set_shortcut(g: Graph, a: int, b: int, c: int, p: GenK33Partition) -> tuple[int, int] | None:
    """Planarising pair forced by a neighbourhood missing some ``Wi``.

    ``p`` must be a partition of ``(g - a,b; c)`` in the labels of ``g``.
    If ``N(a)`` misses one of ``W1, W2, W3`` then ``g - b,c`` is planar;
    symmetrically for ``b``.  Returns that pair (sorted) or ``None`` when
    both neighbourhoods meet all three sets.
    """
    if p.apex != c:
        raise PreconditionError("partition apex does not match c")
    if a in (b, c) or b == c:
        raise PreconditionError("a, b, c must be distinct")
    h, keep = delete_vertices(g, [a, b])
    index = {old: new for new, old in enumerate(keep)}
    local = GenK33Partition(
        index[c],
        tuple(index[x] for x in p.v2),
        tuple(index[x] for x in p.v3),
        tuple(tuple(index[x] for x in w) for w in p.w),
        tuple(tuple(index[x] for x in t) for t in p.trees),
    )
    if not local.verify(h):
        raise PreconditionError("not a generalised K3,3 partition of g - a,b")
    full = g.vertex_mask()
    for x, y in ((a, b), (b, a)):
        nx_ = g.adj[x]
        if any(not any(nx_ >> w & 1 for w in wset) for wset in p.w):
            pair = tuple(sorted((y, c)))
            if not planar_mask(g.adj, full & ~(1 << y) & ~(1 << c)):
                raise AssertionError(f"pair {pair} forced by the W-set argument is not planar")
            return pair
    return None
