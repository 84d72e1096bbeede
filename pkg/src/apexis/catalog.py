"""Named graphs, the triangle-Y family of K7, and the verification sweeps.

Family members other than K7 and H8 are named only where a structural
property singles them out:

* ``F9`` and ``H9`` are the two 9-vertex members.  ``F9`` is the one with
  two adjacent degree-6 vertices sharing five neighbours (so deleting them
  leaves 10 edges); ``H9`` is the other.
* ``F10`` is a 10-vertex member from which one Y-triangle move gives E9.

Every other member is named ``M<n>.<k>`` by order and canonical code rank.
"""

from __future__ import annotations

import json
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Callable

from .apex import NonApexVerdict, is_apex, is_l_apex
from .canon import CanonicalForm, are_isomorphic, canonical_form
from .generate import GenSpec, Node, frontier, make_node, walk
from .graph import (
    Graph,
    MAX_ORDER,
    SizeError,
    complement,
    complete,
    complete_bipartite,
    cycle,
    disjoint_union,
    empty,
    reduce,
    triangle_y,
    triangles,
    y_triangle,
)
from .graph6 import decode, encode
from .minors import has_minor
from .parallel import Runner
from .planarity import nonplanar_edge_lower_bound, planar, planar_mask

log = logging.getLogger(__name__)

# non-planar classes with minimum degree >= 1, keyed by (order, size)
NONPLANAR_COUNTS = {
    (6, 9): 1, (6, 10): 1,
    (7, 9): 0, (7, 10): 2, (7, 11): 9,
    (8, 9): 0, (8, 10): 1, (8, 11): 11,
    (9, 9): 0, (9, 10): 0, (9, 11): 3,
    (10, 11): 1, (10, 12): 15,
    (11, 12): 3,
}


# ---------------------------------------------------------------------------
# named graphs


def k33_pair() -> Graph:
    k = complete_bipartite(3, 3)
    return disjoint_union(k, k)


def j1() -> Graph:
    """Complement of ``K2 + C6``: 8 vertices, 21 edges."""
    return complement(disjoint_union(complete(2), cycle(6)))


def h8() -> Graph:
    return triangle_y(complete(7), (0, 1, 2))


# ---------------------------------------------------------------------------
# triangle-Y family


@dataclass(frozen=True)
class FamilyMember:
    graph: Graph
    form: CanonicalForm
    name: str
    parent: str | None = None
    triangle: tuple[int, int, int] | None = None

    @property
    def order(self) -> int:
        return self.graph.n

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "graph6": encode(self.graph),
            "order": self.graph.n,
            "size": self.graph.size,
            "degree_sequence": self.graph.degree_sequence(),
            "parent": self.parent,
            "triangle": list(self.triangle) if self.triangle else None,
        }


def _closure_raw(seed: Graph, breadth_first: bool = True):
    """Classes reachable by triangle-Y moves: list of (graph, parent_idx, triangle)."""
    seen = {canonical_form(seed).key: 0}
    items = [(seed, None, None)]
    queue = deque([0])
    while queue:
        i = queue.popleft() if breadth_first else queue.pop()
        g = items[i][0]
        for t in triangles(g):
            if g.n + 1 > MAX_ORDER:
                raise SizeError(f"closure member {encode(g)} has no room for a triangle-Y move")
            h = triangle_y(g, t)
            k = canonical_form(h).key
            if k not in seen:
                seen[k] = len(items)
                items.append((h, i, t))
                queue.append(len(items) - 1)
    return items


def _is_f9(g: Graph) -> bool:
    deg = g.degrees()
    for a in range(g.n):
        for b in g.neighbors(a):
            if a < b and deg[a] == deg[b] == 6 and len(g.neighbors(a) & g.neighbors(b)) == 5:
                return True
    return False


def delta_y_closure(seed: Graph, breadth_first: bool = True,
                    e9_graph: Graph | None = None) -> list[FamilyMember]:
    """Isomorphism classes reachable from ``seed`` by triangle-Y moves.

    Members are returned by order, then canonical code; each records its
    parent's name and the triangle (in the parent's labels) that was moved.
    """
    items = _closure_raw(seed, breadth_first)
    forms = [canonical_form(g) for g, _, _ in items]
    idx = sorted(range(len(items)), key=lambda i: (items[i][0].n, forms[i].code))
    names = _name_members([g for g, _, _ in items], forms, seed, e9_graph)
    out = []
    for i in idx:
        g, parent, t = items[i]
        out.append(FamilyMember(
            forms[i].graph(), forms[i], names[i],
            None if parent is None else names[parent],
            None if t is None else tuple(t),
        ))
    return out


def _name_members(graphs: list[Graph], forms: list[CanonicalForm], seed: Graph,
                  e9_graph: Graph | None) -> list[str]:
    names = [""] * len(graphs)
    k7 = canonical_form(complete(7)).key
    h8_key = canonical_form(h8()).key
    from_k7 = canonical_form(seed).key == k7
    if not from_k7:
        e9_graph = None
    elif e9_graph is None:
        e9_graph = _e9_fixture_or_none()
    e9_key = canonical_form(e9_graph).key if e9_graph is not None else None
    by_order: dict[int, list[int]] = {}
    for i, g in enumerate(graphs):
        by_order.setdefault(g.n, []).append(i)
    for n, members in by_order.items():
        members.sort(key=lambda i: forms[i].code)
        for rank, i in enumerate(members, 1):
            g = graphs[i]
            key = forms[i].key
            if key == k7:
                names[i] = "K7"
            elif key == h8_key:
                names[i] = "H8"
            elif from_k7 and n == 9 and len(members) == 2:
                names[i] = "F9" if _is_f9(g) else "H9"
            elif n == 10 and e9_key is not None and _reaches(g, e9_key):
                names[i] = "F10"
            else:
                names[i] = f"M{n}.{rank}"
    f10 = [i for i, s in enumerate(names) if s == "F10"]
    if len(f10) > 1:
        log.warning("several 10-vertex members reach E9; the name F10 is ambiguous")
        for k, i in enumerate(f10, 1):
            names[i] = f"F10?{k}"
    return names


def _reaches(g: Graph, key: tuple[int, int]) -> bool:
    return bool(y_triangle_moves_to(g, key))


def y_triangle_moves_to(g: Graph, key: tuple[int, int]) -> list[int]:
    """Degree-3 vertices of ``g`` whose Y-triangle move lands in class ``key``."""
    return [v for v in range(g.n) if g.degree(v) == 3
            and canonical_form(y_triangle(g, v)).key == key]


def k7_family(breadth_first: bool = True, e9_graph: Graph | None = None) -> list[FamilyMember]:
    return delta_y_closure(complete(7), breadth_first, e9_graph)


def family_member(name: str) -> Graph:
    for m in k7_family():
        if m.name == name:
            return m.graph
    raise KeyError(name)


# ---------------------------------------------------------------------------
# E9 fixture


def _fixture_manifest() -> dict | None:
    try:
        text = resources.files("apexis").joinpath("data/manifest.json").read_text()
    except (FileNotFoundError, OSError):
        return None
    return json.loads(text)


def _e9_fixture_or_none() -> Graph | None:
    man = _fixture_manifest()
    if not man or "E9" not in man.get("named", {}):
        return None
    return decode(man["named"]["E9"]["graph6"])


def e9_properties(g: Graph) -> dict[str, Any]:
    """The identifying structure of E9, as computed on ``g``."""
    deg = g.degrees()
    twins = []
    for a in range(g.n):
        for b in range(a + 1, g.n):
            if deg[a] == deg[b] == 5 and not g.has_edge(a, b) and g.adj[a] == g.adj[b]:
                twins.append((a, b))
    return {
        "order": g.n,
        "size": g.size,
        "min_degree": g.mind(),
        "max_degree": g.maxd(),
        "twin_degree5_pairs": twins,
    }


def check_e9(g: Graph) -> None:
    p = e9_properties(g)
    ok = (p["order"] == 9 and p["size"] == 21 and p["min_degree"] >= 3
          and p["max_degree"] == 5 and p["twin_degree5_pairs"])
    if not ok:
        raise ValueError(f"graph does not have the identifying structure of E9: {p}")


def e9() -> Graph:
    """E9: 9 vertices, 21 edges, neither 2-apex nor containing a K7-family minor.

    Loaded from the frozen fixture and checked against its identifying
    structure (maximum degree 5, two non-adjacent degree-5 vertices with the
    same five neighbours).  :func:`find_e9` recomputes it from scratch.
    """
    g = _e9_fixture_or_none()
    if g is None:
        g = find_e9()
    check_e9(g)
    return g


def find_e9(runner: Runner | None = None) -> Graph:
    """Identify E9 by enumeration: the non-2-apex 9/21 class with maximum degree 5."""
    found = [decode(s) for s in _non2apex_stratum(9, 21, 3, runner or Runner())[1]]
    cands = [g for g in found if g.maxd() == 5]
    if len(cands) != 1:
        raise RuntimeError(f"expected one maximum-degree-5 class, found {len(cands)}")
    return cands[0]


# ---------------------------------------------------------------------------
# sharded sweeps


def _frontier_depth(spec: GenSpec) -> int:
    return max(0, min(7, spec.e_min, spec.top))


def _shards(spec: GenSpec) -> list[list[int]]:
    return [list(nd.graph.adj) for nd in frontier(spec, _frontier_depth(spec))]


def _spec_from(args: dict) -> GenSpec:
    return GenSpec(args["n"], args["e_min"], args["e_max"], args["min_deg"])


_MOD = (1 << 61) - 1


def _shard_job(args: dict) -> dict:
    """Run one shard; the result is a JSON-ready dict keyed by edge count."""
    spec = _spec_from(args)
    kind = args["kind"]
    node = make_node(Graph.from_adjacency(args["adj"]))
    out: dict[str, Any] = {}
    for nd in walk(node, spec):
        g = nd.graph
        row = out.setdefault(str(g.size), {"count": 0, "digest": 0, "hits": []})
        row["count"] += 1
        row["digest"] = (row["digest"] + nd.code * 0x9E3779B97F4A7C15) % _MOD
        if kind == "main":
            hit = not is_apex(g, 2)
        elif kind == "one-apex":
            hit = not is_apex(g, 1)
        elif kind == "nonplanar":
            hit = not planar_mask(g.adj, g.vertex_mask())
        elif kind == "non2apex":
            hit = not is_apex(g, 2)
        elif kind == "all":
            hit = True
        else:
            raise ValueError(kind)
        if hit:
            row["hits"].append(encode(nd.canonical_graph()))
    return out


def sweep(kind: str, spec: GenSpec, runner: Runner) -> dict[int, dict]:
    """Aggregate a shard job over every class of ``spec``, per edge count."""
    reason = spec.satisfiable()
    if reason:
        log.warning("empty sweep: %s", reason)
        return {}
    base = {"kind": kind, "n": spec.n, "e_min": spec.e_min, "e_max": spec.e_max,
            "min_deg": spec.min_deg}
    shards = _shards(spec)
    task = f"{kind}-n{spec.n}-e{spec.e_min}-{spec.top}-d{spec.min_deg}"
    results = runner.map(task, _shard_job, [dict(base, adj=a) for a in shards])
    total: dict[int, dict] = {}
    for res in results:
        for e, row in res.items():
            t = total.setdefault(int(e), {"count": 0, "digest": 0, "hits": []})
            t["count"] += row["count"]
            t["digest"] = (t["digest"] + row["digest"]) % _MOD
            t["hits"].extend(row["hits"])
    for t in total.values():
        t["hits"].sort()
        t["digest"] = f"{t['digest']:016x}"
    return dict(sorted(total.items()))


def _non2apex_stratum(n: int, e: int, min_deg: int, runner: Runner) -> tuple[int, list[str]]:
    spec = GenSpec(n, e, e, min_deg=min_deg)
    res = sweep("non2apex", spec, runner).get(e)
    if res is None:
        return 0, []
    return res["count"], res["hits"]


# ---------------------------------------------------------------------------
# reports


def verify_nonplanar_census(runner: Runner | None = None) -> dict:
    """Count non-planar classes with minimum degree at least 1 per cell of the reference census."""
    runner = runner or Runner()
    cells = []
    by_n: dict[int, list[int]] = {}
    for n, e in NONPLANAR_COUNTS:
        by_n.setdefault(n, []).append(e)
    for n in sorted(by_n):
        es = sorted(by_n[n])
        res = sweep("nonplanar", GenSpec(n, es[0], es[-1], min_deg=1), runner)
        for e in es:
            got = len(res.get(e, {}).get("hits", []))
            cells.append({"n": n, "e": e, "expected": NONPLANAR_COUNTS[(n, e)], "count": got,
                          "match": got == NONPLANAR_COUNTS[(n, e)]})
    return {"command": "table1", "cells": cells, "passed": all(c["match"] for c in cells)}


def verify_edge_bound(max_n: int = 11, max_e: int = 13, runner: Runner | None = None) -> dict:
    """Every non-planar class (minimum degree 1) has at least the bound's edges."""
    runner = runner or Runner()
    rows = []
    for n in range(6, max_n + 1):
        bound = nonplanar_edge_lower_bound(n)
        res = sweep("nonplanar", GenSpec(n, 0, max_e, min_deg=1), runner)
        nonplanar = {e: len(r["hits"]) for e, r in res.items() if r["hits"]}
        below = sum(c for e, c in nonplanar.items() if e < bound)
        rows.append({"n": n, "bound": bound, "first_nonplanar_e": min(nonplanar, default=None),
                     "nonplanar_by_e": {str(e): c for e, c in nonplanar.items()},
                     "violations": below})
    return {"command": "edge-bound", "rows": rows,
            "passed": all(r["violations"] == 0 for r in rows)}


def verify_two_apex_sweep(max_n: int = 10, max_e: int = 20, runner: Runner | None = None) -> dict:
    """Every class with minimum degree 3, at most ``max_e`` edges and order
    at most ``max_n`` is 2-apex."""
    if max_n > 13:
        raise SizeError("order above 13 is not supported")
    runner = runner or Runner()
    strata = []
    counter = []
    for n in range(4, max_n + 1):
        e_min = math.ceil(3 * n / 2)
        if e_min > max_e:
            continue
        res = sweep("main", GenSpec(n, e_min, max_e, min_deg=3), runner)
        for e, r in res.items():
            strata.append({"n": n, "e": e, "count": r["count"], "non_2_apex": len(r["hits"]),
                           "digest": r["digest"]})
            counter.extend(r["hits"])
    return {"command": "verify-main", "parameters": {"max_n": max_n, "max_e": max_e},
            "strata": strata, "total": sum(s["count"] for s in strata),
            "counterexamples": counter, "passed": not counter}


def verify_1apex_threshold(max_e: int = 14, runner: Runner | None = None) -> dict:
    """Classes with minimum degree 3 and at most ``max_e`` edges are 1-apex;
    J1 and two disjoint K3,3 are not."""
    runner = runner or Runner()
    strata = []
    counter = []
    for n in range(4, 2 * max_e // 3 + 1):
        e_min = math.ceil(3 * n / 2)
        res = sweep("one-apex", GenSpec(n, e_min, max_e, min_deg=3), runner)
        for e, r in res.items():
            strata.append({"n": n, "e": e, "count": r["count"], "non_1_apex": len(r["hits"]),
                           "digest": r["digest"]})
            counter.extend(r["hits"])
    named = {"J1": not is_apex(j1(), 1), "K33+K33": not is_apex(k33_pair(), 1)}
    return {"command": "one-apex-threshold", "parameters": {"max_e": max_e},
            "strata": strata, "counterexamples": counter, "named_not_1_apex": named,
            "passed": not counter and all(named.values())}


def identify(g: Graph, family: list[FamilyMember] | None = None) -> str:
    """Name of ``g`` up to isomorphism and isolated vertices, else 'unidentified'."""
    family = family if family is not None else k7_family()
    core_mask = 0
    for v in range(g.n):
        if g.adj[v]:
            core_mask |= 1 << v
    core, _ = g.induced(core_mask)
    pad = g.n - core.n
    key = canonical_form(core).key
    names = {m.form.key: m.name for m in family}
    e9g = _e9_fixture_or_none()
    if e9g is not None:
        names[canonical_form(e9g).key] = "E9"
    base = names.get(key)
    if base is None:
        return "unidentified"
    return base + "⊔K1" * pad


def family_minor(g: Graph, family: list[FamilyMember] | None = None):
    """First family member (by order, then code) that is a minor of ``g``."""
    family = family if family is not None else k7_family()
    for m in family:
        if m.graph.n > g.n or m.graph.size > g.size or m.graph.n > 10:
            continue
        model = has_minor(g, m.graph)
        if model is not None:
            return m, model
    return None


def classify(n: int, e: int, min_deg: int, runner: Runner | None = None) -> dict:
    """Non-2-apex classes of a stratum with family-minor certificates and names."""
    if n > 13:
        raise SizeError("order above 13 is not supported")
    runner = runner or Runner()
    total, hits = _non2apex_stratum(n, e, min_deg, runner)
    family = k7_family()
    entries = []
    for s in hits:
        g = decode(s)
        verdict = is_l_apex(g, 2)
        assert isinstance(verdict, NonApexVerdict) and verdict.verify(g)
        fm = family_minor(g, family)
        red, _ = reduce(g)
        entry = {
            "graph6": s,
            "degree_sequence": g.degree_sequence(),
            "verdict": {"l": 2, "two_apex": False, "candidate_sets": len(verdict.covered()),
                        "verified": True},
            "family_minor": None,
            "identification": identify(g, family),
            "reduced": encode(red),
        }
        if fm is not None:
            member, model = fm
            assert model.verify(g)
            entry["family_minor"] = {"member": member.name,
                                     "branch_sets": [list(b) for b in model.branch_sets]}
        entries.append(entry)
    return {"command": "classify", "parameters": {"n": n, "e": e, "min_deg": min_deg},
            "total": total, "non_2_apex": entries}


def family_report(seed: Graph | None = None) -> dict:
    members = delta_y_closure(seed if seed is not None else complete(7))
    out = {"command": "family", "count": len(members),
           "members": [m.to_dict() for m in members]}
    e9g = _e9_fixture_or_none()
    if e9g is not None and seed is None:
        key = canonical_form(e9g).key
        out["to_e9"] = [{"member": m.name, "vertices": y_triangle_moves_to(m.graph, key)}
                        for m in members if m.graph.n == 10
                        and y_triangle_moves_to(m.graph, key)]
    return out


def build_manifest(runner: Runner | None = None) -> dict:
    """Recompute the fixture manifest (family members plus E9) from scratch."""
    e9g = find_e9(runner)
    check_e9(e9g)
    members = k7_family(e9_graph=e9g)
    key = canonical_form(e9g).key
    named = {"E9": {"graph6": encode(canonical_form(e9g).graph()),
                    "properties": e9_properties(canonical_form(e9g).graph()),
                    "provenance": "unique non-2-apex class with 9 vertices, 21 edges, "
                                  "minimum degree 3 and maximum degree 5"}}
    f10 = [m for m in members if m.graph.n == 10 and y_triangle_moves_to(m.graph, key)]
    for m in f10:
        named.setdefault("F10", {"graph6": encode(m.graph),
                                 "provenance": "10-vertex family member with a Y-triangle move to E9",
                                 "y_triangle_vertices": y_triangle_moves_to(m.graph, key),
                                 "candidates": len(f10)})
    return {"format_version": 1, "named": named,
            "family": [m.to_dict() for m in members]}
