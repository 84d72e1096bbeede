import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from apexis.apex import (
    GenK33Partition,
    apex_bruteforce,
    apex_pairs,
    candidate_sets,
    genk33,
    is_apex,
    is_l_apex,
    w_set_shortcut,
)
from apexis.catalog import j1, k33_pair
from apexis.generate import GenSpec, generate
from apexis.graph import (
    Graph,
    GraphError,
    PreconditionError,
    complete,
    complete_bipartite,
    delete_vertices,
    disjoint_union,
    petersen,
    reduce,
)
from apexis.minors import has_minor
from apexis.planarity import planar

from conftest import graphs, random_graph


def test_examples():
    assert is_l_apex(complete(5), 1)
    assert not is_l_apex(complete(7), 2)
    assert is_l_apex(complete(7), 3)
    assert is_l_apex(petersen(), 1) is not None
    assert not is_l_apex(j1(), 1)
    assert not is_l_apex(k33_pair(), 1)
    assert is_l_apex(k33_pair(), 2)


def test_rejects_bad_l():
    with pytest.raises(GraphError):
        is_l_apex(complete(4), 4)


def test_certificate_and_verdict_verify():
    cert = is_l_apex(complete(6), 2)
    assert cert.verify(complete(6)) and len(cert.apex_set) == 2
    verdict = is_l_apex(complete(7), 2)
    assert verdict.verify(complete(7))
    assert verdict.covered() == set(combinations(range(7), 2))


def test_candidate_order_prefers_high_degree():
    g = disjoint_union(complete(5), Graph(3, [(0, 1)]))
    assert candidate_sets(g, 1)[0] == (0,)
    assert len(candidate_sets(g, 2)) == 28


def test_certificate_is_deterministic():
    g = complete(6)
    assert is_l_apex(g, 2) == is_l_apex(g, 2)


def test_oracle_equivalence_small_census():
    for n in range(1, 8):
        for nd in generate(GenSpec(n)):
            g = nd.graph
            for l in (0, 1, 2):
                res = is_l_apex(g, l)
                assert bool(res) == apex_bruteforce(g, l) == is_apex(g, l)
                assert res.verify(g)


def test_oracle_equivalence_random(rng):
    for _ in range(300):
        n = rng.randint(6, 11)
        g = random_graph(rng, n, rng.uniform(0.3, 0.7))
        l = rng.choice((1, 2))
        res = is_l_apex(g, l)
        assert bool(res) == apex_bruteforce(g, l)
        assert res.verify(g)


@given(graphs(max_n=10, density=0.5), st.sampled_from((1, 2)))
def test_reduction_preserves_answer(g, l):
    h, _ = reduce(g)
    assert bool(is_l_apex(g, l)) == bool(is_l_apex(h, l))


@given(graphs(max_n=10, density=0.5))
def test_monotone_in_l(g):
    answers = [bool(is_l_apex(g, l)) for l in range(4)]
    assert answers == sorted(answers)


def test_minor_closure_spot_check(rng):
    # deleting or contracting never turns a 2-apex graph into a non-2-apex one
    for _ in range(60):
        g = random_graph(rng, rng.randint(7, 10), 0.55)
        if not is_l_apex(g, 2):
            continue
        u, v = rng.choice(g.edges())
        contracted = [(a if a != v else u, b if b != v else u) for a, b in g.edges()]
        h = Graph(g.n, {tuple(sorted(e)) for e in contracted if e[0] != e[1]})
        assert is_l_apex(delete_vertices(h, [v])[0], 2)
        assert is_l_apex(g.remove_edges([(u, v)]), 2)


def test_apex_pairs_k7():
    assert apex_pairs(complete(7)) == []
    pairs = apex_pairs(complete(6))
    assert len(pairs) == 15


# ---------------------------------------------------------------------------
# generalised K3,3


def _k33_minus_v1_plus(extra: list[tuple[int, int]] = (), n_extra: int = 0) -> Graph:
    # 0 = apex v, 1, 2 = v2, v3, 3, 4, 5 = w1..w3
    base = [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (0, 3), (0, 4)]
    return Graph(6 + n_extra, base + list(extra))


def test_genk33_basic():
    g = _k33_minus_v1_plus()
    p = genk33(g, 0)
    assert p is not None and p.verify(g)
    assert (p.v2, p.v3) == ((1,), (2,))
    assert sorted(p.w) == [(3,), (4,), (5,)]


def test_genk33_with_pendant_tree_and_subdivision():
    # subdivide 1-3 by 6; hang 7 off 4
    g = Graph(8, [(1, 6), (6, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5), (4, 7), (0, 7)])
    p = genk33(g, 0)
    assert p is not None and p.verify(g)
    assert len(p.v2) + len(p.v3) == 2
    assert (4, 7) in p.w


def test_genk33_isolated_vertex_is_an_open_question():
    # (K3,3 - v1) plus an isolated vertex u
    g = _k33_minus_v1_plus(n_extra=1)
    assert genk33(g, 0) is None
    p = genk33(g, 0, allow_tree_components=True)
    assert p is not None and p.trees == ((6,),) and p.verify(g)


def test_genk33_rejects_other_shapes():
    p = genk33(complete_bipartite(3, 3), 0)
    assert p is not None and p.verify(complete_bipartite(3, 3))
    assert genk33(complete_bipartite(3, 3).add_edges([(1, 2)]), 0) is None
    assert genk33(complete(5), 0) is None
    with pytest.raises(GraphError):
        genk33(complete(3), 5)


def _random_genk33(r: random.Random) -> tuple[Graph, int, int, int]:
    """A graph G with (G - a,b; c) a generalised K3,3, at most 10 vertices."""
    x, y = 0, 1
    edges = []
    nxt = 2
    for _ in range(3):
        k = r.randint(1, 2)
        inner = list(range(nxt, nxt + k))
        nxt += k
        chain = [x] + inner + [y]
        edges += list(zip(chain, chain[1:]))
    for _ in range(r.randint(0, 1)):
        edges.append((r.randrange(nxt), nxt))
        nxt += 1
    a, b, c = nxt, nxt + 1, nxt + 2
    n = nxt + 3
    for s in (a, b, c):
        for v in range(s):
            if r.random() < 0.5:
                edges.append((v, s))
    return Graph(n, edges), a, b, c


@given(st.randoms(use_true_random=False))
def test_w_set_shortcut_sound(r):
    g, a, b, c = _random_genk33(r)
    h, keep = delete_vertices(g, [a, b])
    local = genk33(h, keep.index(c))
    assert local is not None
    lift = lambda s: tuple(keep[v] for v in s)
    p = GenK33Partition(c, lift(local.v2), lift(local.v3), tuple(lift(w) for w in local.w))
    pair = w_set_shortcut(g, a, b, c, p)
    if pair is not None:
        assert planar(delete_vertices(g, pair)[0])
        assert is_l_apex(g, 2)
    elif not is_l_apex(g, 2):
        # the contrapositive of the shortcut
        for s in (a, b):
            assert all(any(g.has_edge(s, w) for w in ws) for ws in p.w)


def test_w_set_shortcut_precondition():
    g, a, b, c = _random_genk33(random.Random(1))
    bogus = GenK33Partition(c, (0,), (1,), ((2,), (3,), (4,)))
    with pytest.raises(PreconditionError):
        w_set_shortcut(g, a, b, c, bogus)
    with pytest.raises(PreconditionError):
        w_set_shortcut(g, a, a, c, bogus)
