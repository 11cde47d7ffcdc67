import pytest
from cbcore.coloring import EdgeColoring, verify_distinguishing
from cbcore.errors import DocumentIntegrityError, GraphFormatError, StructuralViolationError
from cbcore.solver import DalResult, compute_dal
from cbcore.structure import InfiniteCertificate, InfiniteKind
from dalkit.documents import (ColoringDocument, build_document, check_document, format_coloring_document,
                              format_configuration, format_dal_result, format_hypergraph, format_label_map,
                              format_refusal, format_report, parse_coloring_document, parse_configuration,
                              parse_dal_result, parse_hypergraph, parse_label_map, read_coloring_document,
                              render_dal_result, render_report, write_coloring_document)
from dalkit.generators import cycle_graph, path_graph
from dalkit.hypergraph import fano_plane
from dalkit.reducibility import builtin_configurations, one_diamond

C4 = cycle_graph(4)
C4_COLORING = EdgeColoring(2, {(0, 1): 1, (0, 3): 1, (1, 2): 2, (2, 3): 2})

SAMPLE = """k: 2
method: tree
proper: true
seed: 7
edges:
0 1 1
1 2 2
partitions:
0 1
1 1,1
2 1
"""


def test_parse_coloring_document():
    document = parse_coloring_document(SAMPLE)
    assert document.color_count == 2
    assert document.method == "tree"
    assert document.seed == 7
    assert document.labels is None
    assert document.colors == {(0, 1): 1, (1, 2): 2}
    assert document.partitions == {0: (1,), 1: (1, 1), 2: (1,)}
    assert document.proper
    assert check_document(path_graph(3), document).proper


def test_document_survives_formatting():
    document = build_document(C4, C4_COLORING, "exact", seed=3, labels="c4.labels")
    text = format_coloring_document(document)
    assert text.startswith("k: 2\nmethod: exact\nproper: true\nseed: 3\nlabels: c4.labels\nedges:\n0 1 1\n")
    assert parse_coloring_document(text) == document


def test_empty_partition_is_a_dash():
    document = ColoringDocument(1, {(0, 1): 1}, {0: (1,), 2: ()})
    assert "2 -\n" in format_coloring_document(document)
    assert parse_coloring_document(format_coloring_document(document)).partitions[2] == ()


@pytest.mark.parametrize("text, line", [
    ("k: 2\nedges:\n0 1\n", 3),
    ("k: x\n", 1),
    ("colour: 2\n", 1),
    ("k: 2\nedges:\n0 0 1\n", 3),
    ("k: 2\nedges:\n0 1 1\n1 0 2\n", 4),
    ("k: 2\nproper: maybe\n", 2),
    ("k: 2\npartitions:\n0 a,b\n", 3),
    ("k 2\n", 1),
])
def test_coloring_document_errors_carry_the_line(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_coloring_document(text)
    assert info.value.line == line


def test_coloring_document_whole_file_errors():
    with pytest.raises(GraphFormatError, match="missing 'k:'"):
        parse_coloring_document("edges:\n0 1 1\n")
    with pytest.raises(GraphFormatError, match="outside 1..1"):
        parse_coloring_document("k: 1\nedges:\n0 1 2\n")


def test_check_document_integrity():
    document = build_document(C4, C4_COLORING, "exact")
    assert check_document(C4, document).proper
    with pytest.raises(DocumentIntegrityError, match="do not match"):
        check_document(cycle_graph(5), document)
    with pytest.raises(DocumentIntegrityError, match="stored partition"):
        check_document(C4, ColoringDocument(2, dict(C4_COLORING.assignment), {0: (1, 1)}))
    with pytest.raises(DocumentIntegrityError, match="proper flag"):
        check_document(C4, ColoringDocument(2, dict(C4_COLORING.assignment), {}, proper=False))


def test_read_coloring_document_checks_the_graph(tmp_path):
    path = str(tmp_path / "c4.col")
    write_coloring_document(build_document(C4, C4_COLORING, "exact"), path)
    assert read_coloring_document(path, C4).coloring == C4_COLORING
    with pytest.raises(DocumentIntegrityError):
        read_coloring_document(path, path_graph(4))


def test_label_map():
    labels = parse_label_map("# names\nx1.p0 0\nC1.t1 5  # terminal\nx1.v1 2\n")
    assert labels == {"x1.p0": 0, "C1.t1": 5, "x1.v1": 2}
    assert format_label_map(labels) == "x1.p0 0\nx1.v1 2\nC1.t1 5\n"
    with pytest.raises(GraphFormatError) as info:
        parse_label_map("a 1\na 2\n")
    assert info.value.line == 2
    with pytest.raises(GraphFormatError):
        parse_label_map("a 1 2\n")


def test_hypergraph_file():
    fano = fano_plane()
    text = format_hypergraph(fano)
    assert text.startswith("7 3 7\n0 1 2\n")
    assert parse_hypergraph(text) == fano


@pytest.mark.parametrize("text, line", [
    ("3 3\n0 1 2\n", 1),
    ("3 3 1\n0 1\n", 2),
    ("3 3 1\n0 1 3\n", 2),
    ("3 3 1\n0 1 1\n", 2),
    ("4 3 2\n0 1 2\n2 1 0\n", 3),
])
def test_hypergraph_file_errors(text, line):
    with pytest.raises(GraphFormatError) as info:
        parse_hypergraph(text)
    assert info.value.line == line


def test_hypergraph_file_edge_count():
    with pytest.raises(GraphFormatError, match="announces 2 edges"):
        parse_hypergraph("3 3 2\n0 1 2\n")
    with pytest.raises(GraphFormatError):
        parse_hypergraph("# nothing\n")


def _by_name(config):
    names = config.names
    return (config.name,
            {frozenset((names[u], names[v])) for u, v in config.pattern.edges},
            {names[v] for v in config.interior},
            {frozenset((names[u], names[v])) for u, v in config.matching},
            {(names[x], p) for x, p in config.avoid})


@pytest.mark.parametrize("config", builtin_configurations(), ids=lambda c: c.name)
def test_configuration_file(config):
    assert _by_name(parse_configuration(format_configuration(config))) == _by_name(config)


def test_configuration_file_keeps_side_conditions():
    text = format_configuration(one_diamond())
    assert text.endswith("A:\nr 2,1\n")
    assert _by_name(parse_configuration(text))[-1] == {("r", (2, 1))}


def test_configuration_file_errors():
    with pytest.raises(GraphFormatError) as info:
        parse_configuration("name: x\nE:\n")
    assert info.value.line == 2
    with pytest.raises(GraphFormatError):
        parse_configuration("name: x\nH: a b\n")
    with pytest.raises(GraphFormatError):
        parse_configuration("a b\n")
    with pytest.raises(GraphFormatError, match="missing 'name:'"):
        parse_configuration("H:\na b\n")
    with pytest.raises(StructuralViolationError) as info:
        parse_configuration("name: x\nH:\na b\nD: c\nM:\n")
    assert info.value.invariant == "names"


def test_finite_dal_result():
    result = compute_dal(C4)
    text = format_dal_result(C4, result)
    assert text.startswith("outcome: finite\nk: 2\n")
    parsed = parse_dal_result(text)
    assert parsed.k == 2
    assert verify_distinguishing(C4, parsed.witness).proper


@pytest.mark.parametrize("result", [
    DalResult.no_coloring_up_to(3),
    DalResult.proven_infinite(InfiniteCertificate(InfiniteKind.ODD_CYCLE, frozenset({4, 5, 6}))),
    DalResult.proven_infinite(InfiniteCertificate(InfiniteKind.ODD_CYCLE_OF_DIAMONDS, frozenset(range(4)), 1)),
])
def test_other_dal_results(result):
    assert parse_dal_result(format_dal_result(C4, result)) == result


def test_dal_result_errors():
    with pytest.raises(GraphFormatError, match="missing 'outcome:'"):
        parse_dal_result("k_max: 3\n")
    with pytest.raises(GraphFormatError) as info:
        parse_dal_result("\noutcome: maybe\n")
    assert info.value.line == 2
    with pytest.raises(GraphFormatError, match="incomplete"):
        parse_dal_result("outcome: no-coloring-up-to\n")
    with pytest.raises(GraphFormatError):
        parse_dal_result("outcome: proven-infinite\ncertificate: odd-wheel 0,1,2\n")


def test_format_report():
    graph = path_graph(2)
    report = verify_distinguishing(graph, EdgeColoring.monochromatic(graph))
    assert format_report(report) == "proper: false\nviolation: 0 1 (1)\n"
    assert format_report(verify_distinguishing(C4, C4_COLORING)) == "proper: true\n"
    assert render_report(verify_distinguishing(C4, C4_COLORING)) == "distinguishing\n"
    assert render_report(report).startswith("NOT distinguishing\n")


def test_format_refusal():
    certificate = InfiniteCertificate(InfiniteKind.ODD_CYCLE_OF_DIAMONDS, frozenset(range(4)), 1)
    assert format_refusal("cubic", certificate=certificate) == \
        "proper: false\nmethod: cubic\nrefusal: certificate odd-cycle-of-diamonds-component 0,1,2,3 1\n"
    assert format_refusal("cactus", hypothesis="degree-2-independent", message="adjacent") == \
        "proper: false\nmethod: cactus\nrefusal: hypothesis degree-2-independent\nmessage: adjacent\n"


def test_render_dal_result():
    certificate = InfiniteCertificate(InfiniteKind.ODD_CYCLE, frozenset({0, 1, 2}))
    assert render_dal_result(cycle_graph(3), DalResult.proven_infinite(certificate)) == \
        "dal = infinity: odd-cycle-component on [0, 1, 2]\n"
    assert render_dal_result(C4, compute_dal(C4)).startswith("dal = 2\n")
