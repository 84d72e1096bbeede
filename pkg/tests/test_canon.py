import random
from itertools import combinations, permutations

from hypothesis import given
from hypothesis import strategies as st

from apexis.canon import are_isomorphic, canonical_form, canonical_labeling, orbits
from apexis.graph import Graph, complete_bipartite, cycle, disjoint_union, petersen

from conftest import graphs


def _brute_code(g: Graph) -> int:
    """Largest upper-triangle code over all relabellings."""
    best = -1
    for perm in permutations(range(g.n)):
        code = 0
        for u, v in g.edges():
            i, j = sorted((perm[u], perm[v]))
            code |= 1 << (j * (j - 1) // 2 + i)
        best = max(best, code)
    return best


@given(graphs(max_n=6), graphs(max_n=6))
def test_equal_forms_iff_brute_force_isomorphic(g, h):
    same = g.n == h.n and _brute_code(g) == _brute_code(h)
    assert (canonical_form(g) == canonical_form(h)) == same


@given(graphs(max_n=6))
def test_canonical_code_is_a_relabelling(g):
    codes = set()
    for perm in permutations(range(g.n)):
        codes.add(canonical_form(g.relabel(list(perm))).code)
    assert len(codes) == 1


def test_class_counts_by_brute_force():
    # 1, 2, 4, 11, 34 classes on 1..5 vertices, from every labelled graph
    for n, expected in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)]:
        pairs = list(combinations(range(n), 2))
        keys = set()
        for mask in range(1 << len(pairs)):
            g = Graph(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
            keys.add(canonical_form(g).key)
        assert len(keys) == expected


@given(graphs(max_n=10), st.randoms(use_true_random=False))
def test_relabel_invariance(g, r):
    perm = list(range(g.n))
    r.shuffle(perm)
    h = g.relabel(perm)
    assert canonical_form(g) == canonical_form(h)
    iso = are_isomorphic(g, h)
    assert iso is not None and g.relabel(list(iso)) == h


@given(graphs(max_n=9))
def test_form_graph_is_isomorphic(g):
    f = canonical_form(g)
    c = f.graph()
    assert canonical_form(c) == f
    assert g.relabel(list(f.perm)) == c


def test_regular_non_isomorphic_pairs():
    assert are_isomorphic(cycle(6), disjoint_union(cycle(3), cycle(3))) is None
    # the 3-prism and K3,3 are both cubic on 6 vertices
    prism = Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
    assert are_isomorphic(prism, complete_bipartite(3, 3)) is None


def test_petersen_automorphisms_transitive():
    _, _, gens = canonical_labeling(petersen())
    orb = orbits(10, gens)
    assert len(set(orb)) == 1


def test_automorphism_generators_are_automorphisms():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(2, 10)
        g = Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4])
        _, _, gens = canonical_labeling(g)
        for p in gens:
            assert g.relabel(list(p)) == g
