import io

import networkx as nx
import pytest
from hypothesis import given

from apexis.graph import Graph, complete, petersen
from apexis.graph6 import Graph6Error, decode, encode, read_lines, write_lines

from conftest import graphs, random_graph, to_nx


def test_known_strings():
    assert encode(complete(4)) == "C~"
    assert encode(Graph(0)) == "?"
    assert decode("C~") == complete(4)


@given(graphs(max_n=20, density=0.4))
def test_roundtrip(g):
    assert decode(encode(g)) == g


def test_matches_networkx(rng):
    for _ in range(300):
        g = random_graph(rng, rng.randint(0, 30), rng.random())
        theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert encode(g) == theirs
        h = nx.from_graph6_bytes(theirs.encode())
        assert decode(theirs) == Graph(h.number_of_nodes(), h.edges())


@pytest.mark.parametrize("bad", ["", "C", "C~~", "C\x7f", "Bx", "~" * 3])
def test_rejects_malformed(bad):
    with pytest.raises(Graph6Error):
        decode(bad)


def test_padding_zero_is_valid():
    assert decode("Bw") == complete(3)


def test_stream_roundtrip():
    buf = io.StringIO()
    assert write_lines([complete(5), petersen()], buf) == 2
    buf.seek(0)
    assert list(read_lines(buf)) == [complete(5), petersen()]
