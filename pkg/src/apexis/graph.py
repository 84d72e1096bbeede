"""Simple graphs and multigraphs on at most 32 vertices.

Vertices are the integers ``0 .. n-1`` and every neighbourhood is stored as
an int bitmask, so vertex sets behave like machine words.  Graphs are
immutable; every operation returns a new value.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, NamedTuple

MAX_ORDER = 32


class GraphError(ValueError):
    """Base class for domain, size and precondition failures."""


class SizeError(GraphError):
    pass


class PreconditionError(GraphError):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def _check_order(n: int) -> None:
    if not 0 <= n <= MAX_ORDER:
        raise SizeError(f"order {n} outside 0..{MAX_ORDER}")


class Graph:
    """Simple undirected graph with bitmask adjacency.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of pairs, optional
        Edges ``(u, v)`` with ``u != v``.  Repeated pairs are merged.
    """

    __slots__ = ("n", "adj", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        _check_order(n)
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) outside vertex range 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.n = n
        self.adj = tuple(adj)
        self._m = sum(popcount(a) for a in adj) // 2

    @classmethod
    def from_adjacency(cls, adj: Iterable[int]) -> "Graph":
        """Build from a sequence of neighbourhood bitmasks (trusted input)."""
        g = cls.__new__(cls)
        g.adj = tuple(adj)
        g.n = len(g.adj)
        _check_order(g.n)
        g._m = sum(popcount(a) for a in g.adj) // 2
        return g

    # -- basic measurements -------------------------------------------------
    @property
    def order(self) -> int:
        return self.n

    @property
    def size(self) -> int:
        return self._m

    def __len__(self) -> int:
        return self.n

    def neighbors(self, v: int) -> set[int]:
        return set(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> list[int]:
        return [popcount(a) for a in self.adj]

    def degree_sequence(self) -> list[int]:
        """Vertex degrees in non-increasing order."""
        return sorted(self.degrees(), reverse=True)

    def mind(self) -> int:
        return min(self.degrees(), default=0)

    def maxd(self) -> int:
        return max(self.degrees(), default=0)

    def euler_char(self) -> int:
        return self.n - self._m

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.n):
            for v in bits(self.adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def components(self) -> list[int]:
        """Connected components as vertex bitmasks, ordered by least vertex."""
        seen = 0
        comps = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                nxt = 0
                for u in bits(frontier):
                    nxt |= self.adj[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def induced(self, mask: int) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``mask`` with vertices relabelled in order.

        Returns the subgraph and the list mapping new labels to old ones.
        """
        keep = list(bits(mask))
        index = {v: i for i, v in enumerate(keep)}
        adj = []
        for v in keep:
            a = 0
            for u in bits(self.adj[v] & mask):
                a |= 1 << index[u]
            adj.append(a)
        return Graph.from_adjacency(adj), keep

    def relabel(self, perm: list[int] | tuple[int, ...]) -> "Graph":
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        adj = [0] * self.n
        for v in range(self.n):
            a = 0
            for u in bits(self.adj[v]):
                a |= 1 << perm[u]
            adj[perm[v]] = a
        return Graph.from_adjacency(adj)

    def add_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = list(self.adj)
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph.from_adjacency(adj)

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = list(self.adj)
        for u, v in edges:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph.from_adjacency(adj)

    # -- dunder -------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self) -> int:
        return hash(self.adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# ---------------------------------------------------------------------------
# named constructors


def empty(n: int) -> Graph:
    return Graph(n)


def complete(n: int) -> Graph:
    _check_order(n)
    full = (1 << n) - 1
    return Graph.from_adjacency(full & ~(1 << v) for v in range(n))


def complete_bipartite(m: int, n: int) -> Graph:
    _check_order(m + n)
    return Graph(m + n, ((i, m + j) for i in range(m) for j in range(n)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise SizeError("a cycle needs at least 3 vertices")
    return Graph(n, ((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    """Path with ``n`` edges (so ``n + 1`` vertices)."""
    _check_order(n + 1)
    return Graph(n + 1, ((i, i + 1) for i in range(n)))


def star(n: int) -> Graph:
    """Star with ``n`` edges; vertex 0 is the centre."""
    _check_order(n + 1)
    return Graph(n + 1, ((0, i) for i in range(1, n + 1)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


# ---------------------------------------------------------------------------
# structural operations


def disjoint_union(g: Graph, h: Graph) -> Graph:
    _check_order(g.n + h.n)
    shift = g.n
    return Graph.from_adjacency(list(g.adj) + [a << shift for a in h.adj])


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every edge between ``V(g)`` and ``V(h)``."""
    _check_order(g.n + h.n)
    gmask = (1 << g.n) - 1
    hmask = ((1 << h.n) - 1) << g.n
    adj = [a | hmask for a in g.adj] + [(a << g.n) | gmask for a in h.adj]
    return Graph.from_adjacency(adj)


def complement(g: Graph) -> Graph:
    full = g.vertex_mask()
    return Graph.from_adjacency(full & ~a & ~(1 << v) for v, a in enumerate(g.adj))


def delete_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph on ``V(g) - s``.

    Returns ``(subgraph, keep)`` where ``keep[i]`` is the original name of
    new vertex ``i``.
    """
    mask = 0
    for v in s:
        if not 0 <= v < g.n:
            raise GraphError(f"unknown vertex {v}")
        mask |= 1 << v
    return g.induced(g.vertex_mask() & ~mask)


def smooth_simplify(g: Graph, c: int) -> Graph:
    """Remove degree-2 vertex ``c`` and join its neighbours (kept simple)."""
    if g.degree(c) != 2:
        raise PreconditionError(f"vertex {c} has degree {g.degree(c)}, not 2")
    d, e = bits(g.adj[c])
    h = g.add_edges([(d, e)])
    return delete_vertices(h, [c])[0]


def triangle_y(g: Graph, t: Iterable[int]) -> Graph:
    """Replace the triangle ``t`` by a new vertex ``n`` joined to its corners."""
    a, b, c = sorted(t)
    if not (g.has_edge(a, b) and g.has_edge(b, c) and g.has_edge(a, c)):
        raise PreconditionError(f"{(a, b, c)} is not a triangle")
    _check_order(g.n + 1)
    new = g.n
    adj = list(g.adj) + [(1 << a) | (1 << b) | (1 << c)]
    adj[a] = (adj[a] & ~((1 << b) | (1 << c))) | (1 << new)
    adj[b] = (adj[b] & ~((1 << a) | (1 << c))) | (1 << new)
    adj[c] = (adj[c] & ~((1 << a) | (1 << b))) | (1 << new)
    return Graph.from_adjacency(adj)


def y_triangle(g: Graph, v: int) -> Graph:
    """Delete degree-3 vertex ``v`` and make its neighbours pairwise adjacent."""
    if g.degree(v) != 3:
        raise PreconditionError(f"vertex {v} has degree {g.degree(v)}, not 3")
    a, b, c = bits(g.adj[v])
    h = g.add_edges([(a, b), (b, c), (a, c)])
    return delete_vertices(h, [v])[0]


def triangles(g: Graph) -> list[tuple[int, int, int]]:
    out = []
    for a, b in g.edges():
        for c in bits(g.adj[a] & g.adj[b]):
            if c > b:
                out.append((a, b, c))
    return out


# ---------------------------------------------------------------------------
# reduction (simple-graph pipeline)


class Step(NamedTuple):
    """One reduction step; vertex names refer to the original graph."""

    kind: str  # "isolated" | "leaf" | "smooth"
    vertex: int
    ends: tuple[int, ...] = ()
    simplified: bool = False


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[Step, ...]
    kept: tuple[int, ...]  # original names of the surviving vertices, in order

    def __len__(self) -> int:
        return len(self.steps)


def reduce_mask(adj: list[int] | tuple[int, ...], mask: int) -> tuple[list[int], int, list[Step]]:
    """Peel degree < 3 vertices from the subgraph induced by ``mask``.

    Works directly on bitmask adjacency (original labels); returns the
    reduced adjacency list (only rows in the returned mask are meaningful),
    the surviving vertex mask, and the steps taken.
    """
    adj = [a & mask for a in adj]
    steps: list[Step] = []
    stack = [v for v in bits(mask) if popcount(adj[v]) < 3]
    alive = mask
    while stack:
        c = stack.pop()
        if not alive >> c & 1:
            continue
        nb = adj[c]
        deg = popcount(nb)
        if deg >= 3:
            continue
        alive &= ~(1 << c)
        adj[c] = 0
        if deg == 0:
            steps.append(Step("isolated", c))
            continue
        if deg == 1:
            d = nb.bit_length() - 1
            adj[d] &= ~(1 << c)
            steps.append(Step("leaf", c, (d,)))
            if popcount(adj[d]) < 3:
                stack.append(d)
            continue
        d, e = bits(nb)
        simplified = bool(adj[d] >> e & 1)
        adj[d] = (adj[d] & ~(1 << c)) | (1 << e)
        adj[e] = (adj[e] & ~(1 << c)) | (1 << d)
        steps.append(Step("smooth", c, (d, e), simplified))
        if simplified:
            stack.append(d)
            stack.append(e)
    return adj, alive, steps


def reduce(g: Graph) -> tuple[Graph, ReductionTrace]:
    """Delete degree 0/1 vertices and smooth-simplify degree 2 vertices.

    Runs until the minimum degree is at least 3 or nothing is left.
    """
    adj, alive, steps = reduce_mask(g.adj, g.vertex_mask())
    h, keep = Graph.from_adjacency(adj).induced(alive)
    return h, ReductionTrace(tuple(steps), tuple(keep))


def replay(g: Graph, trace: ReductionTrace) -> Graph:
    """Apply ``trace`` to ``g`` step by step; used to audit reductions."""
    adj = list(g.adj)
    alive = g.vertex_mask()
    for st in trace.steps:
        c = st.vertex
        nb = adj[c] & alive
        if st.kind == "isolated":
            if nb:
                raise PreconditionError(f"vertex {c} is not isolated")
        elif st.kind == "leaf":
            if popcount(nb) != 1 or nb != 1 << st.ends[0]:
                raise PreconditionError(f"vertex {c} is not a leaf on {st.ends}")
            adj[st.ends[0]] &= ~(1 << c)
        else:
            d, e = st.ends
            if nb != (1 << d) | (1 << e):
                raise PreconditionError(f"vertex {c} is not degree 2 on {st.ends}")
            adj[d] = (adj[d] & ~(1 << c)) | (1 << e)
            adj[e] = (adj[e] & ~(1 << c)) | (1 << d)
        adj[c] = 0
        alive &= ~(1 << c)
    return Graph.from_adjacency(a & alive for a in adj).induced(alive)[0]


# ---------------------------------------------------------------------------
# multigraphs


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph; ``edges`` maps sorted pairs to multiplicity.

    A loop ``(v, v)`` contributes 2 to the degree of ``v``.
    """

    n: int
    edges: tuple[tuple[tuple[int, int], int], ...] = field(default=())

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Multigraph":
        cnt = Counter(tuple(sorted(p)) for p in pairs)
        return cls(n, tuple(sorted(cnt.items())))

    @classmethod
    def from_graph(cls, g: Graph) -> "Multigraph":
        return cls.from_pairs(g.n, g.edges())

    def counter(self) -> Counter:
        return Counter(dict(self.edges))

    def degree(self, v: int) -> int:
        d = 0
        for (a, b), k in self.edges:
            if a == v:
                d += k
            if b == v:
                d += k
        return d

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for (a, b), k in self.edges:
            deg[a] += k
            deg[b] += k
        return deg

    @property
    def size(self) -> int:
        return sum(k for _, k in self.edges)

    def simple(self) -> Graph:
        """Drop loops and collapse parallel edges."""
        return Graph(self.n, (p for p, _ in self.edges if p[0] != p[1]))


@dataclass(frozen=True)
class MultiStep:
    kind: str  # "isolated" | "leaf" | "smooth"
    vertex: int
    ends: tuple[int, ...] = ()


def multigraph_simplify(m: Multigraph) -> tuple[Multigraph, list[int], list[MultiStep]]:
    """Topological simplification keeping loops and multiplicities.

    Returns the simplified multigraph (relabelled contiguously), the list of
    surviving original vertices, and the steps.  A vertex carrying only a
    loop has degree 2 but cannot be smoothed, so it is a fixed point.
    """
    cnt = m.counter()
    alive = set(range(m.n))
    steps: list[MultiStep] = []

    def incident(v):
        return [(p, k) for p, k in cnt.items() if v in p and k > 0]

    def deg(v):
        return sum(k * (2 if p[0] == p[1] else 1) for p, k in incident(v))

    changed = True
    while changed:
        changed = False
        for v in sorted(alive):
            d = deg(v)
            if d >= 3:
                continue
            inc = incident(v)
            if d == 0:
                alive.discard(v)
                steps.append(MultiStep("isolated", v))
                changed = True
            elif d == 1:
                (p, _), = inc
                u = p[0] if p[1] == v else p[1]
                del cnt[p]
                alive.discard(v)
                steps.append(MultiStep("leaf", v, (u,)))
                changed = True
            else:
                if len(inc) == 1 and inc[0][0][0] == inc[0][0][1]:
                    continue  # lone loop vertex
                ends = []
                for p, k in inc:
                    u = p[0] if p[1] == v else p[1]
                    ends.extend([u] * k)
                    del cnt[p]
                d1, d2 = ends
                cnt[tuple(sorted((d1, d2)))] += 1
                alive.discard(v)
                steps.append(MultiStep("smooth", v, (d1, d2)))
                changed = True
            break
    keep = sorted(alive)
    index = {v: i for i, v in enumerate(keep)}
    pairs = []
    for (a, b), k in cnt.items():
        pairs.extend([(index[a], index[b])] * k)
    return Multigraph.from_pairs(len(keep), pairs), keep, steps


def degree_sequence(g: Graph) -> list[int]:
    return g.degree_sequence()


def edge_pairs(mask: int) -> Iterator[tuple[int, int]]:
    return combinations(bits(mask), 2)
