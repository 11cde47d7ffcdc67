import networkx as nx
import pytest
from cbcore.errors import GraphFormatError
from cbcore.graph import Graph, edge_subgraph, format_graph, from_networkx, induced_subgraph, parse_graph, to_networkx


def test_graph_normalizes_and_sorts_edges():
    g = Graph.from_edges([(2, 1), (0, 1)])
    assert g.edges == ((0, 1), (1, 2))
    assert g.vertex_count == 3
    assert g.degrees == (1, 2, 1)
    assert g.has_edge(2, 1)
    assert g == Graph(3, ((1, 0), (2, 1)))


def test_graph_keeps_isolated_vertices():
    g = Graph.from_edges([(0, 1)], vertex_count=4)
    assert list(g.vertices) == [0, 1, 2, 3]
    assert g.degree(3) == 0
    assert g.max_degree == 1


@pytest.mark.parametrize("edges", [
    ((0, 0),),
    ((0, 1), (1, 0)),
    ((0, 5),),
])
def test_graph_rejects_bad_edges(edges):
    with pytest.raises(GraphFormatError):
        Graph(3, edges)


def test_parse_graph_skips_comments():
    text = "# a path\n\n3 2\n0 1\n# middle\n1 2\n"
    g = parse_graph(text)
    assert g.vertex_count == 3
    assert g.edges == ((0, 1), (1, 2))


def test_format_then_parse_keeps_the_graph():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 0), (2, 3)])
    text = format_graph(g, "triangle with a pendant")
    assert text.startswith("# triangle with a pendant\n4 4\n")
    assert parse_graph(text) == g


# Every parse error names the offending line
@pytest.mark.parametrize("text, line", [
    ("3 2\n0 1\n1 1\n", 3),
    ("3 2\n0 1\n1 3\n", 3),
    ("3 2\n0 1\n1 0\n", 3),
    ("3 1\n0 x\n", 2),
    ("3\n", 1),
    ("3 1\n0 1 2\n", 2),
])
def test_parse_graph_reports_line_numbers(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_graph(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_parse_graph_checks_edge_count():
    with pytest.raises(GraphFormatError, match="announces 3 edges"):
        parse_graph("3 3\n0 1\n1 2\n")
    with pytest.raises(GraphFormatError, match="header"):
        parse_graph("# nothing here\n")


def test_induced_subgraph_relabels_in_order():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0), (1, 3)])
    sub, index = induced_subgraph(g, [3, 1, 2])
    assert index == {1: 0, 2: 1, 3: 2}
    assert sub.edges == ((0, 1), (0, 2), (1, 2))


def test_edge_subgraph_drops_isolated_vertices():
    sub, index = edge_subgraph([(4, 7), (7, 9)])
    assert index == {4: 0, 7: 1, 9: 2}
    assert sub.edges == ((0, 1), (1, 2))


def test_networkx_conversion():
    g = Graph.from_edges([(0, 1), (1, 2)], vertex_count=4)
    h = to_networkx(g)
    assert h.number_of_nodes() == 4
    assert h.number_of_edges() == 2
    back, index = from_networkx(nx.path_graph(["a", "b", "c"]))
    assert back.edge_count == 2
    assert set(index) == {"a", "b", "c"}
