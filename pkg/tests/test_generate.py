from collections import Counter

import pytest

from apexis.canon import canonical_form
from apexis.generate import GenSpec, canonical_graphs, count, frontier, generate, walk
from apexis.graph import Graph, SizeError
from apexis.planarity import planar

from conftest import atlas


@pytest.mark.parametrize("n,expected", [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156), (7, 1044)])
def test_census_counts(n, expected):
    assert count(GenSpec(n)) == expected


def test_matches_atlas_classes():
    ours = set()
    for n in range(8):
        ours |= {canonical_form(g).key for g in canonical_graphs(GenSpec(n))}
    theirs = {canonical_form(g).key for g in atlas(7)}
    assert ours == theirs


def test_filters_match_atlas():
    want = Counter((g.n, g.size) for g in atlas(7) if g.n and g.mind() >= 2)
    got = Counter()
    for n in range(1, 8):
        for nd in generate(GenSpec(n, min_deg=2)):
            got[(n, nd.graph.size)] += 1
    assert got == want


def test_edge_range_and_degree_bounds():
    nodes = list(generate(GenSpec(7, 9, 11, min_deg=1, max_deg=4)))
    assert nodes
    for nd in nodes:
        g = nd.graph
        assert 9 <= g.size <= 11 and g.mind() >= 1 and g.maxd() <= 4
    sizes = [nd.graph.size for nd in nodes]
    assert sizes == sorted(sizes)


def test_derived_min_degree_three_count():
    # frozen from a full run: 8 vertices, at most 20 edges, minimum degree 3
    assert count(GenSpec(8, 0, 20, min_deg=3)) == 2392


def test_predicates_filter_output():
    spec = GenSpec(6, predicates=(lambda g: not planar(g),))
    got = [nd.graph for nd in generate(spec)]
    assert all(not planar(g) for g in got)
    want = sum(1 for g in atlas(6) if g.n == 6 and not planar(g))
    assert len(got) == want


def test_shards_partition_the_tree():
    spec = GenSpec(7, min_deg=1)
    serial = sorted(nd.code for nd in generate(spec))
    for depth in (2, 5):
        sharded = sorted(nd.code for root in frontier(spec, depth) for nd in walk(root, spec))
        # shallow strata sit above the frontier
        shallow = sorted(nd.code for nd in generate(GenSpec(7, 0, depth - 1, min_deg=1)))
        assert sorted(sharded + shallow) == serial


def test_unsatisfiable_specs_yield_nothing():
    assert GenSpec(14).satisfiable()
    assert count(GenSpec(14)) == 0
    assert count(GenSpec(5, 11)) == 0
    assert GenSpec(4, min_deg=4).satisfiable()


def test_unique_output():
    codes = [nd.code for nd in generate(GenSpec(7, 8, 12))]
    assert len(codes) == len(set(codes))


def test_graph_order_cap():
    with pytest.raises(SizeError):
        Graph(40)


@pytest.mark.parametrize("n,expected", [(4, 1), (6, 2), (8, 6), (10, 21), (12, 94)])
def test_cubic_graph_counts(n, expected):
    # connected cubic graphs 1, 2, 5, 19, 85 plus the disjoint unions of smaller ones
    assert count(GenSpec(n, 3 * n // 2, 3 * n // 2, min_deg=3, max_deg=3)) == expected
