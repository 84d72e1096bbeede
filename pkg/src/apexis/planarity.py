"""Planarity testing with certificates.

Positive answers come with a rotation system (checked by face tracing and
Euler's formula); negative answers with a K5 or K3,3 minor model.  The test
itself is the Demoucron-Malgrange-Pertuiset path-embedding algorithm run on
each biconnected block of the topologically reduced graph; embeddings are
lifted back through the reduction so they describe the input graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph import (
    Graph,
    GraphError,
    bits,
    complete,
    complete_bipartite,
    reduce_mask,
)

__all__ = [
    "PlanarEmbedding",
    "MinorModel",
    "is_planar",
    "planar",
    "planar_mask",
    "embed",
    "kuratowski_model",
    "nonplanar_edge_lower_bound",
]


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class PlanarEmbedding:
    """Rotation system: ``rotation[v]`` lists the neighbours of ``v`` in cyclic order."""

    rotation: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rotation)

    def faces(self) -> list[list[int]]:
        """Face boundaries as vertex walks, traced with ``(a, b) -> (b, succ_b(a))``."""
        succ = {}
        for b, nbrs in enumerate(self.rotation):
            k = len(nbrs)
            for i, a in enumerate(nbrs):
                succ[(b, a)] = nbrs[(i + 1) % k]
        seen = set()
        faces = []
        for b, nbrs in enumerate(self.rotation):
            for a in nbrs:
                dart = (a, b)
                if dart in seen:
                    continue
                walk = []
                while dart not in seen:
                    seen.add(dart)
                    walk.append(dart[0])
                    x, y = dart
                    dart = (y, succ[(y, x)])
                faces.append(walk)
        return faces

    def graph(self) -> Graph:
        return Graph(self.n, ((v, u) for v, nb in enumerate(self.rotation) for u in nb if v < u))

    def verify(self, g: Graph | None = None) -> bool:
        """Euler check ``V - E + F = 2`` on every component (and match ``g``)."""
        for v, nb in enumerate(self.rotation):
            if len(set(nb)) != len(nb) or v in nb:
                return False
            for u in nb:
                if v not in self.rotation[u]:
                    return False
        h = self.graph()
        if g is not None and h != g:
            return False
        faces = self.faces()
        comp_of = {}
        for idx, comp in enumerate(h.components()):
            for v in bits(comp):
                comp_of[v] = idx
        nf = [0] * len(h.components())
        for f in faces:
            nf[comp_of[f[0]]] += 1
        for idx, comp in enumerate(h.components()):
            sub, _ = h.induced(comp)
            f = nf[idx] if sub.size else 1
            if sub.n - sub.size + f != 2:
                return False
        return True


@dataclass(frozen=True)
class MinorModel:
    """Branch sets of a ``pattern`` minor inside a host graph.

    ``branch_sets[i]`` is the host vertex set for pattern vertex ``i``;
    ``witnesses`` gives, per pattern edge ``(i, j)``, a host edge joining the
    two branch sets.
    """

    pattern: Graph
    branch_sets: tuple[tuple[int, ...], ...]
    witnesses: tuple[tuple[tuple[int, int], tuple[int, int]], ...]

    def verify(self, host: Graph) -> bool:
        used = 0
        for bs in self.branch_sets:
            if not bs:
                return False
            m = 0
            for v in bs:
                if not 0 <= v < host.n:
                    return False
                m |= 1 << v
            if used & m:
                return False
            used |= m
            sub, _ = host.induced(m)
            if not sub.is_connected():
                return False
        realised = {}
        for (i, j), (x, y) in self.witnesses:
            if not host.has_edge(x, y):
                return False
            if not ((x in self.branch_sets[i] and y in self.branch_sets[j])
                    or (y in self.branch_sets[i] and x in self.branch_sets[j])):
                return False
            realised[(min(i, j), max(i, j))] = True
        return all((i, j) in realised for i, j in self.pattern.edges())

    @property
    def name(self) -> str:
        p = self.pattern
        if p.n == 5 and p.size == 10:
            return "K5"
        if p.n == 6 and p.size == 9 and p.degree_sequence() == [3] * 6:
            return "K3,3"
        return f"pattern(n={p.n}, e={p.size})"


# ---------------------------------------------------------------------------
# biconnected blocks


def _blocks(adj: Sequence[int], mask: int) -> list[int]:
    """Vertex masks of the biconnected blocks (including bridges) of ``mask``."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks = []
    counter = 0
    for s in bits(mask):
        if s in disc:
            continue
        disc[s] = low[s] = counter
        counter += 1
        stack = [(s, -1, iter(list(bits(adj[s] & mask))))]
        estack: list[tuple[int, int]] = []
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    estack.append((v, w))
                    stack.append((w, v, iter(list(bits(adj[w] & mask)))))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
                if low[v] >= disc[p]:
                    bm = 0
                    while estack:
                        a, b = estack.pop()
                        bm |= (1 << a) | (1 << b)
                        if (a, b) == (p, v):
                            break
                    blocks.append(bm)
    return blocks


# ---------------------------------------------------------------------------
# Demoucron-Malgrange-Pertuiset on one biconnected block


def _find_cycle(adj: Sequence[int], mask: int) -> list[int]:
    start = (mask & -mask).bit_length() - 1
    parent = {start: -1}
    depth = {start: 0}
    stack = [start]
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for w in bits(adj[v] & mask):
            if w not in parent:
                parent[w] = v
                depth[w] = depth[v] + 1
                stack.append(w)
    # any non-tree edge closes a cycle
    for v in order:
        for w in bits(adj[v] & mask):
            if parent.get(v) != w and parent.get(w) != v:
                a, b = v, w
                pa, pb = [a], [b]
                while depth[a] > depth[b]:
                    a = parent[a]
                    pa.append(a)
                while depth[b] > depth[a]:
                    b = parent[b]
                    pb.append(b)
                while a != b:
                    a = parent[a]
                    pa.append(a)
                    b = parent[b]
                    pb.append(b)
                return pa + pb[-2::-1]
    raise GraphError("block has no cycle")


def _dmp(adj: Sequence[int], mask: int) -> list[list[int]] | None:
    """Faces (oriented vertex cycles) of a planar embedding of a 2-connected block."""
    nv = mask.bit_count()
    ne = sum((adj[v] & mask).bit_count() for v in bits(mask)) // 2
    if ne > 3 * nv - 6:
        return None
    cyc = _find_cycle(adj, mask)
    faces = [cyc, cyc[::-1]]
    face_masks = []
    hv = 0
    for v in cyc:
        hv |= 1 << v
    fm = hv
    face_masks = [fm, fm]
    # embedded adjacency
    hadj = {v: 0 for v in bits(mask)}
    k = len(cyc)
    for i in range(k):
        a, b = cyc[i], cyc[(i + 1) % k]
        hadj[a] |= 1 << b
        hadj[b] |= 1 << a
    n_embedded = k
    while n_embedded < ne:
        # fragments: (attachment mask, path endpoints / component mask)
        fragments = []
        for v in bits(hv):
            rest = adj[v] & mask & ~hadj[v]
            for w in bits(rest & hv):
                if v < w:
                    fragments.append(((1 << v) | (1 << w), None, (v, w)))
        outside = mask & ~hv
        while outside:
            s = (outside & -outside).bit_length() - 1
            comp = front = 1 << s
            while front:
                nxt = 0
                for x in bits(front):
                    nxt |= adj[x]
                front = nxt & outside & ~comp
                comp |= front
            outside &= ~comp
            att = 0
            for x in bits(comp):
                att |= adj[x] & hv
            fragments.append((att, comp, None))
        chosen = None
        for frag in fragments:
            att = frag[0]
            adm = [i for i, fmk in enumerate(face_masks) if att & ~fmk == 0]
            if not adm:
                return None
            if chosen is None or len(adm) == 1:
                chosen = (frag, adm[0])
                if len(adm) == 1:
                    break
        (att, comp, pair), fi = chosen
        if comp is None:
            pth = list(pair)
        else:
            a = (att & -att).bit_length() - 1
            b_mask = att & ~(1 << a)
            # BFS from a through comp until reaching a vertex adjacent to another attachment
            prev = {}
            queue = []
            for x in bits(adj[a] & comp):
                prev[x] = a
                queue.append(x)
            end = None
            qi = 0
            while qi < len(queue):
                x = queue[qi]
                qi += 1
                hit = adj[x] & b_mask
                if hit:
                    end = (x, (hit & -hit).bit_length() - 1)
                    break
                for y in bits(adj[x] & comp):
                    if y not in prev:
                        prev[y] = x
                        queue.append(y)
            x, b = end
            inner = [x]
            while prev[inner[-1]] != a:
                inner.append(prev[inner[-1]])
            pth = [a] + inner[::-1] + [b]
        face = faces[fi]
        u, w = pth[0], pth[-1]
        i = face.index(u)
        j = face.index(w)
        m = len(face)
        interior = pth[1:-1]
        if i <= j:
            seg_uw = face[i : j + 1]
            seg_wu = face[j:] + face[: i + 1]
        else:
            seg_uw = face[i:] + face[: j + 1]
            seg_wu = face[j : i + 1]
        fa = seg_uw + interior[::-1]
        fb = seg_wu + interior
        del m
        faces[fi] = fa
        faces.append(fb)
        ma = mb = 0
        for v in fa:
            ma |= 1 << v
        for v in fb:
            mb |= 1 << v
        face_masks[fi] = ma
        face_masks.append(mb)
        for v in interior:
            hv |= 1 << v
        for p, q in zip(pth, pth[1:]):
            hadj[p] |= 1 << q
            hadj[q] |= 1 << p
            n_embedded += 1
    return faces


def _rotation_from_faces(faces: list[list[int]]) -> dict[int, list[int]]:
    succ: dict[int, dict[int, int]] = {}
    for f in faces:
        k = len(f)
        for i in range(k):
            a, b, c = f[i - 1], f[i], f[(i + 1) % k]
            succ.setdefault(b, {})[a] = c
    rot = {}
    for b, s in succ.items():
        start = min(s)
        order = [start]
        x = s[start]
        while x != start:
            order.append(x)
            x = s[x]
        if len(order) != len(s):
            raise GraphError("faces do not define a rotation system")
        rot[b] = order
    return rot


# ---------------------------------------------------------------------------
# public API


def _planar_reduced(adj: Sequence[int], mask: int, want_embedding: bool):
    """Planarity of the (already reduced, min degree >= 3) graph on ``mask``."""
    rot: dict[int, list[int]] = {v: [] for v in bits(mask)}
    if not mask:
        return rot
    nv = mask.bit_count()
    ne = sum((adj[v] & mask).bit_count() for v in bits(mask)) // 2
    if ne > 3 * nv - 6 and nv >= 3:
        return None
    for bm in _blocks(adj, mask):
        if bm.bit_count() == 2:
            a, b = bits(bm)
            rot[a].append(b)
            rot[b].append(a)
            continue
        faces = _dmp(adj, bm)
        if faces is None:
            return None
        if want_embedding:
            for v, order in _rotation_from_faces(faces).items():
                rot[v].extend(order)
    return rot


def planar_mask(adj: Sequence[int], mask: int) -> bool:
    """Planarity of the subgraph induced by ``mask`` (boolean fast path)."""
    radj, alive, _ = reduce_mask(adj, mask)
    nv = alive.bit_count()
    if nv < 5:
        return True
    ne = sum(radj[v].bit_count() for v in bits(alive)) // 2
    if ne < 9:
        return True
    return _planar_reduced(radj, alive, False) is not None


def planar(g: Graph) -> bool:
    return planar_mask(g.adj, g.vertex_mask())


def embed(g: Graph) -> PlanarEmbedding | None:
    """A planar rotation system for ``g`` or ``None`` when ``g`` is non-planar."""
    radj, alive, steps = reduce_mask(g.adj, g.vertex_mask())
    rot = _planar_reduced(radj, alive, True)
    if rot is None:
        return None
    for v in range(g.n):
        rot.setdefault(v, [])
    for st in reversed(steps):
        c = st.vertex
        if st.kind == "isolated":
            rot[c] = []
        elif st.kind == "leaf":
            d = st.ends[0]
            rot[d].append(c)
            rot[c] = [d]
        else:
            d, e = st.ends
            if st.simplified:
                rd = rot[d]
                rd.insert(rd.index(e) + 1, c)
                re_ = rot[e]
                re_.insert(re_.index(d), c)
            else:
                rd = rot[d]
                rd[rd.index(e)] = c
                re_ = rot[e]
                re_[re_.index(d)] = c
            rot[c] = [d, e]
    return PlanarEmbedding(tuple(tuple(rot[v]) for v in range(g.n)))


def _subdivision_model(g: Graph, edges: list[tuple[int, int]]) -> MinorModel:
    """Minor model from the edge set of a K5 or K3,3 subdivision."""
    adj = [0] * g.n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    branch = [v for v in range(g.n) if adj[v].bit_count() >= 3]
    # trace every branch path
    paths = []
    for b in branch:
        for first in bits(adj[b]):
            prev, cur = b, first
            inner = []
            while adj[cur].bit_count() == 2:
                inner.append(cur)
                nxt = adj[cur] & ~(1 << prev)
                prev, cur = cur, nxt.bit_length() - 1
            if b < cur:
                paths.append((b, cur, inner))
    if len(branch) == 5:
        pattern = complete(5)
        index = {v: i for i, v in enumerate(branch)}
    else:
        pattern = complete_bipartite(3, 3)
        bnbr = {b: set() for b in branch}
        for a, c, _ in paths:
            bnbr[a].add(c)
            bnbr[c].add(a)
        first = branch[0]
        side_a = [first] + sorted(x for x in branch if x != first and not (x in bnbr[first]))
        side_b = sorted(bnbr[first])
        index = {v: i for i, v in enumerate(side_a)}
        index.update({v: 3 + i for i, v in enumerate(side_b)})
    sets: list[list[int]] = [[] for _ in range(pattern.n)]
    for v, i in index.items():
        sets[i].append(v)
    witnesses = []
    for a, c, inner in paths:
        sets[index[a]].extend(inner)
        last = inner[-1] if inner else a
        i, j = index[a], index[c]
        witnesses.append(((min(i, j), max(i, j)), (last, c) if i < j else (c, last)))
    witnesses.sort()
    # orient witness host edges as (vertex in set i, vertex in set j)
    fixed = []
    for (i, j), (x, y) in witnesses:
        if x in sets[i]:
            fixed.append(((i, j), (x, y)))
        else:
            fixed.append(((i, j), (y, x)))
    return MinorModel(pattern, tuple(tuple(sorted(s)) for s in sets), tuple(fixed))


def kuratowski_model(g: Graph) -> MinorModel:
    """K5 or K3,3 minor model of a non-planar graph."""
    adj = list(g.adj)
    alive = g.vertex_mask()
    for v in range(g.n):
        trial = alive & ~(1 << v)
        if not planar_mask(adj, trial):
            alive = trial
    adj = [a & alive for a in adj]
    for u, v in Graph.from_adjacency(adj).edges():
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        if planar_mask(adj, alive):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    edges = Graph.from_adjacency(adj).edges()
    return _subdivision_model(g, edges)


def is_planar(g: Graph) -> PlanarEmbedding | MinorModel:
    """Embedding when ``g`` is planar, otherwise a Kuratowski minor model."""
    emb = embed(g)
    if emb is not None:
        return emb
    return kuratowski_model(g)


def nonplanar_edge_lower_bound(n: int) -> int:
    """Fewest edges of a non-planar graph on ``n >= 6`` vertices with no isolated vertex."""
    if n < 6:
        raise GraphError(f"bound defined for n >= 6, got {n}")
    return n + 3 - (n - 6) // 2
