"""Spatial graph diagrams: parsing, cycles, crossing sets, knot extraction.

Diagram files are line oriented::

    # a theta graph with one self-crossing on edge e1
    vertex a
    vertex b
    edge e1 a b : 1o 1u
    edge e2 a b
    edge e3 b a
    crossing 1 +1

``edge <name> <u> <v> : <passage>*`` lists, in order from ``u`` to ``v``,
the crossings the edge passes through, each tagged ``o`` (over) or ``u``
(under).  ``crossing <id> <sign>`` gives the sign (+1 or -1) of the
crossing with both strands oriented along their edges' ``u -> v`` direction.
Every crossing appears in exactly two passages, one over and one under.
The underlying graph must be simple.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ..graph import Graph
from .knot import (
    CrossingBudgetError,
    GaussCode,
    LaurentPolynomial,
    MAX_CROSSINGS,
    jones,
    replay,
    simplify,
)

__all__ = [
    "DiagramError",
    "Edge",
    "SpatialDiagram",
    "load_diagram",
    "parse_diagram",
    "cycles",
    "cycle_crossing_sets",
    "maximal_sets",
    "extract_knot",
    "CycleReport",
    "certify_unknotted",
    "certify_code",
]


class DiagramError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = f"line {line}" + (f", column {column}" if column else "") + ": " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Edge:
    name: str
    u: int
    v: int
    passages: tuple[tuple[int, bool], ...]


@dataclass(frozen=True)
class SpatialDiagram:
    vertex_names: tuple[str, ...]
    edges: tuple[Edge, ...]
    signs: tuple[tuple[int, int], ...]

    @property
    def graph(self) -> Graph:
        return Graph(len(self.vertex_names), [(e.u, e.v) for e in self.edges])

    @property
    def crossings(self) -> list[int]:
        return [c for c, _ in self.signs]

    def edge_between(self, a: int, b: int) -> tuple[Edge, bool]:
        """The edge joining ``a`` and ``b`` and whether it runs ``a -> b``."""
        for e in self.edges:
            if (e.u, e.v) == (a, b):
                return e, True
            if (e.u, e.v) == (b, a):
                return e, False
        raise KeyError((a, b))

    def crossing_edges(self) -> dict[int, tuple[str, str]]:
        """``id -> (over edge name, under edge name)``."""
        over: dict[int, str] = {}
        under: dict[int, str] = {}
        for e in self.edges:
            for c, o in e.passages:
                (over if o else under)[c] = e.name
        return {c: (over[c], under[c]) for c in over}


def _parse_sign(tok: str, line: int, col: int) -> int:
    if tok in ("+1", "1", "+"):
        return 1
    if tok in ("-1", "-"):
        return -1
    raise DiagramError(f"crossing sign must be +1 or -1, got {tok!r}", line, col)


def parse_diagram(text: str) -> SpatialDiagram:
    vertices: dict[str, int] = {}
    names: list[str] = []
    edges: list[Edge] = []
    signs: dict[int, int] = {}
    seen_edges: set[str] = set()
    pairs: set[frozenset] = set()
    for ln, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = body.split()
        if not toks:
            continue
        cols = []
        pos = 0
        for t in toks:
            pos = body.index(t, pos)
            cols.append(pos + 1)
            pos += len(t)
        kw = toks[0]
        if kw == "vertex":
            if len(toks) != 2:
                raise DiagramError("expected 'vertex <name>'", ln, cols[0])
            if toks[1] in vertices:
                raise DiagramError(f"duplicate vertex {toks[1]!r}", ln, cols[1])
            vertices[toks[1]] = len(names)
            names.append(toks[1])
        elif kw == "edge":
            if len(toks) < 4 or (len(toks) > 4 and toks[4] != ":"):
                raise DiagramError("expected 'edge <name> <u> <v> [: passages]'", ln, cols[0])
            name, u, v = toks[1:4]
            if name in seen_edges:
                raise DiagramError(f"duplicate edge {name!r}", ln, cols[1])
            for t, c in ((u, cols[2]), (v, cols[3])):
                if t not in vertices:
                    raise DiagramError(f"unknown vertex {t!r}", ln, c)
            if u == v:
                raise DiagramError(f"edge {name!r} is a loop", ln, cols[3])
            pair = frozenset((u, v))
            if pair in pairs:
                raise DiagramError(f"edge {name!r} duplicates an existing edge {u}-{v}", ln, cols[1])
            pairs.add(pair)
            seen_edges.add(name)
            passages = []
            for t, c in zip(toks[5:], cols[5:]):
                if len(t) < 2 or t[-1] not in "ou" or not t[:-1].isdigit():
                    raise DiagramError(f"bad passage {t!r} (expected <id>o or <id>u)", ln, c)
                passages.append((int(t[:-1]), t[-1] == "o"))
            edges.append(Edge(name, vertices[u], vertices[v], tuple(passages)))
        elif kw == "crossing":
            if len(toks) != 3 or not toks[1].isdigit():
                raise DiagramError("expected 'crossing <id> <sign>'", ln, cols[0])
            cid = int(toks[1])
            if cid in signs:
                raise DiagramError(f"duplicate crossing {cid}", ln, cols[1])
            signs[cid] = _parse_sign(toks[2], ln, cols[2])
        else:
            raise DiagramError(f"unknown keyword {kw!r}", ln, cols[0])
    d = SpatialDiagram(tuple(names), tuple(edges), tuple(sorted(signs.items())))
    validate(d)
    return d


def validate(d: SpatialDiagram) -> None:
    count: dict[int, list[bool]] = {}
    for e in d.edges:
        for c, o in e.passages:
            count.setdefault(c, []).append(o)
    signs = dict(d.signs)
    for c, os_ in sorted(count.items()):
        if len(os_) != 2:
            raise DiagramError(f"crossing {c} appears in {len(os_)} passage(s); expected 2")
        if sorted(os_) != [False, True]:
            raise DiagramError(f"crossing {c} needs one over and one under passage")
        if c not in signs:
            raise DiagramError(f"crossing {c} has no sign declaration")
    for c in signs:
        if c not in count:
            raise DiagramError(f"crossing {c} is declared but never passed through")


def load_diagram(path) -> SpatialDiagram:
    with open(path) as fh:
        return parse_diagram(fh.read())


# ---------------------------------------------------------------------------
# cycles


def cycles(g: Graph) -> list[tuple[int, ...]]:
    """Every simple cycle once: least vertex first, smaller neighbour second."""
    out = []
    adj = g.adj
    for s in range(g.n):
        allowed = ~((1 << (s + 1)) - 1)
        path = [s]
        on = 1 << s

        def go(v: int) -> None:
            nonlocal on
            if len(path) >= 3 and adj[v] >> s & 1 and path[1] < path[-1]:
                out.append(tuple(path))
            nb = adj[v] & allowed & ~on
            while nb:
                w = (nb & -nb).bit_length() - 1
                nb &= nb - 1
                path.append(w)
                on |= 1 << w
                go(w)
                on &= ~(1 << w)
                path.pop()

        go(s)
    out.sort(key=lambda c: (len(c), c))
    return out


def _cycle_edges(d: SpatialDiagram, cyc: tuple[int, ...]) -> list[tuple[Edge, bool]]:
    return [d.edge_between(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]


def cycle_crossing_sets(d: SpatialDiagram) -> list[tuple[tuple[int, ...], frozenset[int]]]:
    """For each cycle, the crossings with both strands on the cycle."""
    owners = d.crossing_edges()
    out = []
    for cyc in cycles(d.graph):
        names = {e.name for e, _ in _cycle_edges(d, cyc)}
        own = frozenset(c for c, (a, b) in owners.items() if a in names and b in names)
        out.append((cyc, own))
    return out


def maximal_sets(sets: Iterable[frozenset[int]]) -> list[frozenset[int]]:
    uniq = set(sets)
    keep = [s for s in uniq if not any(s < t for t in uniq)]
    return sorted(keep, key=lambda s: sorted(s))


def extract_knot(d: SpatialDiagram, cyc: tuple[int, ...]) -> GaussCode:
    """Signed Gauss code of the knot formed by a cycle.

    The cycle is oriented along ``cyc``; a strand traversed against its
    edge's direction flips the sign of each crossing it takes part in.
    """
    walk = _cycle_edges(d, cyc)
    names = {e.name for e, _ in walk}
    owners = d.crossing_edges()
    own = {c for c, (a, b) in owners.items() if a in names and b in names}
    signs = dict(d.signs)
    seq = []
    for e, forward in walk:
        ps = e.passages if forward else tuple(reversed(e.passages))
        for c, o in ps:
            if c in own:
                seq.append((c, o))
                if not forward:
                    signs[c] = -signs[c]
    return GaussCode.make(seq, {c: signs[c] for c in own})


# ---------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class CycleReport:
    cycle: tuple[int, ...]
    crossings: tuple[int, ...]
    code: str
    verdict: str  # "Unknot" | "Knotted" | "Unknown"
    moves: tuple = ()
    jones: LaurentPolynomial | None = None
    reason: str = ""

    def to_dict(self, names: tuple[str, ...] | None = None) -> dict:
        return {
            "cycle": [names[v] for v in self.cycle] if names else list(self.cycle),
            "crossings": list(self.crossings),
            "code": self.code,
            "verdict": self.verdict,
            "moves": [[k, list(ids)] for k, ids in self.moves],
            "jones": None if self.jones is None else self.jones.to_dict(),
            "reason": self.reason,
        }


def certify_code(code: GaussCode, cyc: tuple[int, ...] = (), max_states: int = 5000) -> CycleReport:
    crossings = tuple(code.crossings)
    text = str(code)
    if len(code) > MAX_CROSSINGS:
        return CycleReport(cyc, crossings, text, "Unknown",
                           reason=f"{len(code)} crossings exceed the budget of {MAX_CROSSINGS}")
    final, moves = simplify(code, max_states)
    if len(final) == 0:
        assert len(replay(code, moves)) == 0
        return CycleReport(cyc, crossings, text, "Unknot", tuple(moves))
    try:
        poly = jones(code)
    except CrossingBudgetError as exc:  # pragma: no cover - guarded above
        return CycleReport(cyc, crossings, text, "Unknown", reason=str(exc))
    if poly != LaurentPolynomial({0: 1}):
        return CycleReport(cyc, crossings, text, "Knotted", jones=poly)
    return CycleReport(cyc, crossings, text, "Unknown", jones=poly,
                       reason=f"Reidemeister search stopped at {len(final)} crossings and the Jones polynomial is 1")


def certify_unknotted(d: SpatialDiagram, max_states: int = 5000) -> list[CycleReport]:
    return [certify_code(extract_knot(d, cyc), cyc, max_states) for cyc in cycles(d.graph)]
