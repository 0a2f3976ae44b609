import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from named_graphs import complete, cube, cycle

from cyclex.graph import Cut, Graph, GraphError, contract_shore
from cyclex.io import (
    ParseError,
    graph_from_json,
    graph_to_json,
    parse_edgelist,
    parse_graph6,
    parse_graph_text,
    read_graph,
    to_dot,
    to_edgelist,
    to_graph6,
)
from cyclex.iso import is_isomorphic


@st.composite
def simple_graphs(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if draw(st.booleans())]
    return Graph.from_edges(n, pairs)


# graph ---------------------------------------------------------------------

def test_ids_survive_deletion():
    g = cycle(6)
    h = g.delete_vertices([2])
    assert h.vertices == (0, 1, 3, 4, 5)
    assert h.edge_ids() == [0, 3, 4, 5]
    h2, e = h.add_edge(1, 3)
    assert e == 6  # never reuses an id


def test_loops_and_bad_endpoints_rejected():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph([0, 1], [(0, (0, 5))])


def test_multigraph_queries():
    g = Graph.from_edges(3, [(0, 1), (0, 1), (1, 2)])
    assert not g.is_simple()
    assert g.multiplicity(0, 1) == 2
    assert g.degree(1) == 3
    assert g.underlying_simple().m == 2


def test_bipartition():
    assert cube().is_bipartite()
    assert not complete(4).is_bipartite()


def test_cut_and_contraction():
    g = cube()
    c = Cut.of(g, [0, 1, 2, 3])
    assert len(c.edge_set) == 4
    assert not c.is_trivial(g)
    h = contract_shore(g, [0, 1, 2, 3])
    assert h.n == 5 and h.m == 8
    assert h.degree(0) == 4
    assert sorted(h.incident(0)) == sorted(c.edge_set)  # cut edges keep their ids
    with pytest.raises(GraphError):
        contract_shore(g, [0, 1], label=5)


# graph6 --------------------------------------------------------------------

def test_graph6_known_strings():
    assert is_isomorphic(parse_graph6("C~"), complete(4))
    k2 = parse_graph6("A_")
    assert (k2.n, k2.m) == (2, 1)
    c4 = parse_graph6("Cr")
    assert is_isomorphic(c4, cycle(4))
    assert to_graph6(complete(4)) == "C~"
    assert parse_graph6(">>graph6<<C~").m == 6


@pytest.mark.parametrize("bad", ["", "C", "C~~", "A`", "C\x7f"])
def test_graph6_errors(bad):
    with pytest.raises(ParseError):
        parse_graph6(bad)


def test_graph6_rejects_multigraph():
    with pytest.raises(GraphError):
        to_graph6(Graph.from_edges(2, [(0, 1), (0, 1)]))


@settings(max_examples=80, deadline=None)
@given(simple_graphs())
def test_graph6_round_trip(g):
    h = parse_graph6(to_graph6(g))
    assert sorted(uv for _, uv in h.edges()) == sorted(uv for _, uv in g.edges())


def test_graph6_large_n_header():
    g = Graph.from_edges(70, [(i, i + 1) for i in range(69)])
    s = to_graph6(g)
    assert s.startswith("~")
    assert parse_graph6(s).m == 69


# edge list / JSON / DOT -----------------------------------------------------

def test_edgelist_round_trip_keeps_parallel_edges():
    g = Graph.from_edges(3, [(0, 1), (0, 1), (1, 2)])
    h = parse_edgelist(to_edgelist(g))
    assert h.edges() == g.edges()


@pytest.mark.parametrize("text", ["", "3", "3 2\n0 1", "2 1\n0 0", "2 1\n0 2", "2 1\na b", "x y\n"])
def test_edgelist_errors(text):
    with pytest.raises(ParseError):
        parse_edgelist(text)


def test_edgelist_comments():
    g = parse_edgelist("# a path\n3 2\n0 1  # first\n1 2\n")
    assert g.m == 2


@settings(max_examples=40, deadline=None)
@given(simple_graphs())
def test_json_round_trip(g):
    assert graph_from_json(json.loads(json.dumps(graph_to_json(g)))) == g


def test_autodetect(tmp_path):
    g = cube()
    assert parse_graph_text(to_edgelist(g)).m == 12
    assert parse_graph_text(to_graph6(g)).m == 12
    assert parse_graph_text(json.dumps(graph_to_json(g))).m == 12
    p = tmp_path / "g.g6"
    p.write_text(to_graph6(g) + "\n")
    assert read_graph(p).m == 12
    with pytest.raises(ParseError):
        read_graph(tmp_path / "missing.el")
    with pytest.raises(ParseError):
        parse_graph_text('{"vertices": [0], "edges": [[0, 0, 0]]}')  # loop
    with pytest.raises(ParseError):
        parse_graph_text("{not json")


def test_dot_highlight():
    text = to_dot(cycle(4), highlight_edges=[0], highlight_vertices=[1])
    assert text.startswith("graph G {")
    assert "0 -- 1 [label=\"0\", color=red, penwidth=3];" in text
    assert "fillcolor" in text
