import random

import networkx as nx
import pytest
from hypothesis import given

from apexis.generate import GenSpec, generate
from apexis.graph import (
    Graph,
    GraphError,
    complete,
    complete_bipartite,
    cycle,
    delete_vertices,
    disjoint_union,
    petersen,
)
from apexis.minors import has_minor
from apexis.planarity import embed, is_planar, kuratowski_model, nonplanar_edge_lower_bound, planar

from conftest import atlas, graphs, random_graph, to_nx

K5 = complete(5)
K33 = complete_bipartite(3, 3)


def test_examples():
    assert planar(complete(4))
    assert not planar(K5)
    assert not planar(K33)
    assert not planar(petersen())
    assert planar(Graph(0))
    assert kuratowski_model(K5).name == "K5"
    assert kuratowski_model(K33).name == "K3,3"


def test_k5_minus_edge_embedding_has_six_faces():
    g = complete(5).remove_edges([(0, 1)])
    emb = embed(g)
    assert emb is not None and emb.verify(g)
    assert len(emb.faces()) == 2 - g.n + g.size


def test_agrees_with_networkx_on_atlas():
    for g in atlas(7):
        assert planar(g) == nx.check_planarity(to_nx(g))[0]


def test_agrees_with_networkx_random(rng):
    for _ in range(400):
        n = rng.randint(5, 14)
        g = random_graph(rng, n, rng.uniform(0.15, 0.5))
        assert planar(g) == nx.check_planarity(to_nx(g))[0]


@given(graphs(max_n=11, density=0.35))
def test_certificates_verify(g):
    cert = is_planar(g)
    assert cert.verify(g)
    if planar(g):
        assert len(cert.faces()) >= (1 if g.size else 0)
    else:
        assert cert.name in ("K5", "K3,3")


@given(graphs(max_n=10, density=0.4))
def test_deletion_keeps_planarity(g):
    if planar(g) and g.n:
        h, _ = delete_vertices(g, [0])
        assert planar(h)
        if g.size:
            assert planar(g.remove_edges(g.edges()[:1]))


def test_wagner_consistency_all_graphs_up_to_eight():
    """Non-planar exactly when a K5 or K3,3 minor exists."""
    for n in range(5, 9):
        for nd in generate(GenSpec(n, 9)):
            g = nd.graph
            if planar(g):
                continue
            assert has_minor(g, K5) or has_minor(g, K33)
    for g in atlas(7):
        if planar(g):
            assert has_minor(g, K5) is None and has_minor(g, K33) is None


def test_edge_lower_bound_values():
    assert [nonplanar_edge_lower_bound(n) for n in range(6, 12)] == [9, 10, 10, 11, 11, 12]
    with pytest.raises(GraphError):
        nonplanar_edge_lower_bound(5)


def test_edge_lower_bound_small_census():
    for n in range(6, 9):
        spec = GenSpec(n, 0, nonplanar_edge_lower_bound(n) - 1, min_deg=1)
        assert all(planar(nd.graph) for nd in generate(spec))


def test_disjoint_union_planarity():
    assert not planar(disjoint_union(cycle(4), K33))
    emb = embed(disjoint_union(cycle(4), complete(4)))
    assert emb is not None and emb.verify()
