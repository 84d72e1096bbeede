import random
from pathlib import Path

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from apexis.graph import complete, complete_bipartite, cycle, petersen
from apexis.spatial import (
    CrossingBudgetError,
    DiagramError,
    GaussCode,
    LaurentPolynomial,
    certify_code,
    certify_unknotted,
    cycle_crossing_sets,
    cycles,
    extract_knot,
    find_moves,
    is_realisable,
    jones,
    load_diagram,
    maximal_sets,
    parse_diagram,
    simplify,
)
from apexis.spatial.knot import replay

from conftest import graphs, to_nx
from knot_oracle import jones_oracle, random_inflation

DATA = Path(__file__).parent / "data"
TREFOIL = "1o+ 2u+ 3o+ 1u+ 2o+ 3u+"
FIGURE8 = "1o- 2u- 3o+ 4u+ 2o- 1u- 4o+ 3u+"
CINQUEFOIL = "1o+ 2u+ 3o+ 4u+ 5o+ 1u+ 2o+ 3u+ 4o+ 5u+"


def _as_dict(p: LaurentPolynomial) -> dict[int, int]:
    return {int(k): v for k, v in p.to_dict().items()}


def test_jones_unknot():
    assert jones(GaussCode.make([], {})) == 1
    assert jones(GaussCode.parse("1o+ 1u+")) == 1
    assert jones(GaussCode.parse("1u- 1o-")) == 1


@pytest.mark.parametrize("text,want", [
    (TREFOIL, {1: 1, 3: 1, 4: -1}),
    (FIGURE8, {-2: 1, -1: -1, 0: 1, 1: -1, 2: 1}),
    (CINQUEFOIL, {2: 1, 4: 1, 5: -1, 6: 1, 7: -1}),
])
def test_jones_known_values(text, want):
    code = GaussCode.parse(text)
    assert _as_dict(jones(code)) == want
    assert jones_oracle(code) == want


def test_mirror_inverts_t():
    code = GaussCode.parse(TREFOIL)
    mirror = GaussCode.make([(c, not o) for c, o in code.seq], {c: -s for c, s in code.signs})
    assert _as_dict(jones(mirror)) == {-k: v for k, v in _as_dict(jones(code)).items()}


def test_figure8_amphichiral():
    code = GaussCode.parse(FIGURE8)
    assert _as_dict(jones(code)) == {-k: v for k, v in _as_dict(jones(code)).items()}


def test_crossing_budget():
    code = random_inflation(GaussCode.make([], {}), random.Random(0), 17)
    assert len(code) > 16
    with pytest.raises(CrossingBudgetError):
        jones(code)
    assert certify_code(code).verdict == "Unknown"


def test_realisability():
    assert is_realisable(GaussCode.parse(TREFOIL))
    assert not is_realisable(GaussCode.parse("1o+ 2u+ 1u+ 2o+"))


def test_gauss_code_validation():
    with pytest.raises(ValueError):
        GaussCode.parse("1o+ 1o+")
    with pytest.raises(ValueError):
        GaussCode.parse("1o+ 1u-")


def test_key_is_rotation_and_rename_invariant():
    a = GaussCode.parse(TREFOIL)
    b = GaussCode.parse("5u+ 7o+ 6u+ 5o+ 7u+ 6o+")
    assert a.key() == b.key()


@given(st.integers(0, 2**32 - 1), st.sampled_from(["", TREFOIL, FIGURE8]))
def test_jones_invariant_under_insertions(seed, base):
    rng = random.Random(seed)
    code = GaussCode.parse(base) if base else GaussCode.make([], {})
    big = random_inflation(code, rng, rng.randint(1, 3))
    assert is_realisable(big)
    assert jones(big) == jones(code)
    assert jones_oracle(big) == jones_oracle(code)


@given(st.integers(0, 2**32 - 1))
def test_inflated_unknots_simplify(seed):
    rng = random.Random(seed)
    code = random_inflation(GaussCode.make([], {}), rng, rng.randint(1, 6))
    final, moves = simplify(code)
    assert len(final) == 0
    assert len(replay(code, moves)) == 0


def test_trefoil_does_not_simplify():
    final, _ = simplify(GaussCode.parse(TREFOIL))
    assert len(final) == 3
    assert find_moves(GaussCode.parse(TREFOIL), "12") == []
    rep = certify_code(GaussCode.parse(TREFOIL))
    assert rep.verdict == "Knotted"


# ---------------------------------------------------------------------------
# diagrams


@pytest.mark.parametrize("g,count", [(complete(4), 7), (cycle(6), 1), (complete(5), 37),
                                     (complete_bipartite(3, 3), 15), (petersen(), 57)])
def test_cycle_counts(g, count):
    assert len(cycles(g)) == count


@given(graphs(max_n=7, density=0.5))
def test_cycles_match_networkx(g):
    theirs = [c for c in nx.simple_cycles(to_nx(g)) if len(c) >= 3]
    assert len(cycles(g)) == len(theirs)
    for c in cycles(g):
        assert c[0] == min(c) and c[1] < c[-1]
        assert all(g.has_edge(c[i], c[(i + 1) % len(c)]) for i in range(len(c)))


def test_trefoil_fixture():
    d = load_diagram(DATA / "trefoil_theta.txt")
    reports = certify_unknotted(d)
    verdicts = {tuple(d.vertex_names[v] for v in r.cycle): r.verdict for r in reports}
    assert verdicts[("a", "b", "c")] == "Knotted"
    assert sum(v == "Knotted" for v in verdicts.values()) == 1
    knot = extract_knot(d, (0, 1, 2))
    assert jones(knot) != 1
    assert _as_dict(jones(knot)) == jones_oracle(knot)


def test_one_crossing_k4_fixture():
    d = load_diagram(DATA / "unknotted_k4.txt")
    assert [sorted(s) for s in maximal_sets(s for _, s in cycle_crossing_sets(d))] == [[1]]
    assert all(r.verdict == "Unknot" for r in certify_unknotted(d))


def test_backward_traversal_flips_sign():
    d = load_diagram(DATA / "trefoil_theta.txt")
    fwd = extract_knot(d, (0, 1, 2))
    # the same cycle walked the other way is the same knot
    back = extract_knot(d, (0, 2, 1))
    assert jones(fwd) == jones(back)


@pytest.mark.parametrize("text,line", [
    ("vertex a\nvertex a\n", 2),
    ("vertex a\nvertex b\nedge e a c\n", 3),
    ("vertex a\nedge e a a\n", 2),
    ("vertex a\nvertex b\nedge e a b\nedge f b a\n", 4),
    ("vertex a\nvertex b\nedge e a b : 1x\n", 3),
    ("vertex a\nbogus\n", 2),
    ("vertex a\nvertex b\ncrossing 1 +2\n", 3),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(DiagramError) as err:
        parse_diagram(text)
    assert err.value.line == line


def test_unbalanced_crossing():
    with pytest.raises(DiagramError):
        parse_diagram("vertex a\nvertex b\nedge e a b : 1o\ncrossing 1 +1\n")
