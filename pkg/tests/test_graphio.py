import pytest

from diffgenus import groups as gr
from diffgenus.graphio import parse_edgelist, write_dot, write_edgelist
from diffgenus.groupgraphs import difference_graph
from diffgenus.simplegraph import SimpleGraph


def test_edgelist_round_trip_plain():
    g = SimpleGraph.complete_bipartite(2, 3)
    again = parse_edgelist(write_edgelist(g))
    assert again.n == g.n
    assert again.edges() == g.edges()


def test_edgelist_round_trip_group_labels():
    gg = difference_graph(gr.build_group("Z18"))
    text = write_edgelist(gg.graph)
    again = parse_edgelist(text)
    assert again.edges() == gg.graph.edges()
    assert [tuple(lab) for lab in again.labels] == [tuple(lab) for lab in gg.graph.labels]


def test_edgelist_header_counts():
    g = SimpleGraph(4, [(0, 1), (2, 3)])
    first = write_edgelist(g).splitlines()[0]
    assert first == "4 2"


def test_parse_edgelist_errors():
    with pytest.raises(ValueError):
        parse_edgelist("")
    with pytest.raises(ValueError):
        parse_edgelist("3\n0 1\n")  # header must be "n m"
    with pytest.raises(ValueError):
        parse_edgelist("2 2\n0 1\n")  # missing an edge line


def test_dot_output_mentions_labels():
    gg = difference_graph(gr.build_group("Z12"))
    dot = write_dot(gg.graph)
    assert dot.startswith("graph G {")
    assert "(o=" in dot
    assert dot.count(" -- ") == gg.graph.edge_count
