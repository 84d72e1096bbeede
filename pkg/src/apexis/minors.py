"""Minor containment for small patterns.

A graph ``H`` has ``P`` as a minor exactly when some sequence of vertex
deletions and edge contractions brings ``H`` down to ``|P|`` vertices with
``P`` as a spanning subgraph; edge deletions can always be postponed to the
end.  The search explores that sequence space depth first, tracks the host
vertices merged into each current vertex (the branch sets), and memoises
failed states by canonical form.
"""

from __future__ import annotations

from .canon import canonical_labeling
from .graph import Graph, SizeError, bits
from .planarity import MinorModel

__all__ = ["has_minor", "MAX_PATTERN"]

MAX_PATTERN = 10


def _compact(adj: list[int], sets: list[int], drop: int) -> tuple[list[int], list[int]]:
    """Remove vertex ``drop``, shifting higher labels down by one."""
    low = (1 << drop) - 1
    out = []
    for i, a in enumerate(adj):
        if i == drop:
            continue
        out.append((a & low) | ((a >> (drop + 1)) << drop))
    return out, sets[:drop] + sets[drop + 1:]


def _contract(adj: list[int], sets: list[int], u: int, v: int) -> tuple[list[int], list[int]]:
    """Merge ``v`` into ``u`` (u < v not required)."""
    adj = list(adj)
    sets = list(sets)
    nb = (adj[u] | adj[v]) & ~(1 << u) & ~(1 << v)
    for x in bits(adj[v]):
        adj[x] &= ~(1 << v)
        if x != u:
            adj[x] |= 1 << u
    adj[u] = nb
    sets[u] |= sets[v]
    adj[v] = 0
    return _compact(adj, sets, v)


def _reduce(adj: list[int], sets: list[int]) -> tuple[list[int], list[int]]:
    """Strip degree <= 2 vertices; sound for patterns of minimum degree 3."""
    while True:
        for v, a in enumerate(adj):
            d = a.bit_count()
            if d <= 1:
                adj, sets = _compact(list(adj), sets, v) if d == 0 else _delete(adj, sets, v)
                break
            if d == 2:
                u = (a & -a).bit_length() - 1
                adj, sets = _contract(adj, sets, u, v)
                break
        else:
            return adj, sets


def _delete(adj: list[int], sets: list[int], v: int) -> tuple[list[int], list[int]]:
    adj = list(adj)
    for x in bits(adj[v]):
        adj[x] &= ~(1 << v)
    adj[v] = 0
    return _compact(adj, sets, v)


def _embed_spanning(padj: list[int], hadj: list[int]) -> list[int] | None:
    """Injective map ``phi`` with every pattern edge mapped onto a host edge."""
    n = len(padj)
    order = sorted(range(n), key=lambda v: -padj[v].bit_count())
    # prefer vertices adjacent to already placed ones
    placed_order = [order[0]]
    rest = set(order[1:])
    while rest:
        placed_mask = 0
        for v in placed_order:
            placed_mask |= 1 << v
        best = max(rest, key=lambda v: ((padj[v] & placed_mask).bit_count(), padj[v].bit_count(), -v))
        placed_order.append(best)
        rest.remove(best)
    hdeg = [a.bit_count() for a in hadj]
    pdeg = [a.bit_count() for a in padj]
    phi = [-1] * n
    used = 0

    def go(i: int) -> bool:
        nonlocal used
        if i == n:
            return True
        p = placed_order[i]
        need = None
        for q in bits(padj[p]):
            if phi[q] >= 0:
                need = hadj[phi[q]] if need is None else need & hadj[phi[q]]
        cand = need if need is not None else (1 << len(hadj)) - 1
        cand &= ~used
        for h in bits(cand):
            if hdeg[h] < pdeg[p]:
                continue
            phi[p] = h
            used |= 1 << h
            if go(i + 1):
                return True
            used &= ~(1 << h)
            phi[p] = -1
        return False

    return phi if go(0) else None


class _Search:
    def __init__(self, pattern: Graph, reducible: bool):
        self.padj = list(pattern.adj)
        self.pn = pattern.n
        self.pm = pattern.size
        self.pdeg = sorted((a.bit_count() for a in self.padj), reverse=True)
        self.reducible = reducible
        self.failed: set[tuple[int, int]] = set()

    def run(self, adj: list[int], sets: list[int]):
        if self.reducible:
            adj, sets = _reduce(adj, sets)
        n = len(adj)
        m = sum(a.bit_count() for a in adj) // 2
        if n < self.pn or m < self.pm:
            return None
        _, code, _ = canonical_labeling(Graph.from_adjacency(adj))
        key = (n, code)
        if key in self.failed:
            return None
        if n == self.pn:
            hdeg = sorted((a.bit_count() for a in adj), reverse=True)
            if all(h >= p for h, p in zip(hdeg, self.pdeg)):
                phi = _embed_spanning(self.padj, adj)
                if phi is not None:
                    return [sets[phi[i]] for i in range(self.pn)]
            self.failed.add(key)
            return None
        deg = [a.bit_count() for a in adj]
        # vertex deletions, low degree first
        for v in sorted(range(n), key=lambda x: (deg[x], x)):
            if m - deg[v] < self.pm:
                continue
            nadj, nsets = _delete(adj, sets, v)
            found = self.run(nadj, nsets)
            if found is not None:
                return found
        # contractions, edges between low-degree endpoints first
        edges = [(u, v) for u in range(n) for v in bits(adj[u] >> (u + 1) << (u + 1))]
        edges.sort(key=lambda e: (deg[e[0]] + deg[e[1]], e))
        for u, v in edges:
            if m - 1 - (adj[u] & adj[v]).bit_count() < self.pm:
                continue
            nadj, nsets = _contract(adj, sets, u, v)
            found = self.run(nadj, nsets)
            if found is not None:
                return found
        self.failed.add(key)
        return None


def _model(host: Graph, pattern: Graph, sets: list[int]) -> MinorModel:
    branch = tuple(tuple(bits(s)) for s in sets)
    witnesses = []
    for i, j in pattern.edges():
        for x in bits(sets[i]):
            ys = host.adj[x] & sets[j]
            if ys:
                witnesses.append(((i, j), (x, (ys & -ys).bit_length() - 1)))
                break
    return MinorModel(pattern, branch, tuple(witnesses))


def has_minor(g: Graph, pattern: Graph) -> MinorModel | None:
    """A model of ``pattern`` as a minor of ``g``, or ``None``.

    Patterns of more than ``MAX_PATTERN`` vertices raise ``SizeError``
    unless rejected by order or edge count first.
    """
    if pattern.n > g.n or pattern.size > g.size:
        return None
    if pattern.n > MAX_PATTERN:
        raise SizeError(f"pattern has {pattern.n} vertices; at most {MAX_PATTERN} supported")
    if pattern.n == 0:
        return MinorModel(pattern, (), ())
    if any(not a for a in pattern.adj):
        # isolated pattern vertices: search the whole pattern on the whole host
        found = _Search(pattern, False).run(list(g.adj), [1 << i for i in range(g.n)])
        return None if found is None else _model(g, pattern, found)
    reducible = pattern.mind() >= 3
    hosts = []
    if pattern.is_connected():
        hosts = [c for c in sorted(g.components(), key=lambda c: (-c.bit_count(), c))
                 if c.bit_count() >= pattern.n]
    else:
        hosts = [g.vertex_mask()]
    for hmask in hosts:
        sub, keep = g.induced(hmask)
        if sub.size < pattern.size:
            continue
        found = _Search(pattern, reducible).run(list(sub.adj), [1 << i for i in range(sub.n)])
        if found is None:
            continue
        sets = []
        for s in found:
            m = 0
            for x in bits(s):
                m |= 1 << keep[x]
            sets.append(m)
        return _model(g, pattern, sets)
    return None
