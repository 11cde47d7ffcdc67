import itertools

import pytest
from cbcore.coloring import (CUBIC_PARTITIONS, EdgeColoring, canonical_partition, color_blind_partition, color_counts,
                             format_partition, is_degree_distinguishing, partitions, verify_among,
                             verify_distinguishing)
from cbcore.errors import IncompleteColoringError, PreconditionError
from cbcore.graph import Graph

STAR = Graph.from_edges([(0, 1), (0, 2), (0, 3)])
C4 = Graph.from_edges([(0, 1), (1, 2), (2, 3), (3, 0)])
K4 = Graph.from_edges([(u, v) for u in range(4) for v in range(u + 1, 4)])


def test_canonical_partition():
    assert canonical_partition([0, 2, 1]) == (2, 1)
    assert canonical_partition([1, 0, 3, 1]) == (3, 1, 1)
    assert canonical_partition([0, 0]) == ()
    assert format_partition((2, 1)) == "(2,1)"


# The three partitions of a degree-3 vertex
@pytest.mark.parametrize("colors, expected", [
    ((1, 1, 1), (3,)),
    ((1, 2, 1), (2, 1)),
    ((1, 2, 3), (1, 1, 1)),
])
def test_partition_at_degree_three_vertex(colors, expected):
    coloring = EdgeColoring(3, dict(zip(STAR.edges, colors)))
    assert color_blind_partition(STAR, coloring, 0) == expected
    assert expected in CUBIC_PARTITIONS


def test_color_counts_is_per_color():
    coloring = EdgeColoring(3, dict(zip(STAR.edges, (3, 1, 3))))
    assert color_counts(STAR, coloring, 0) == [1, 0, 2]


def test_partial_coloring_names_the_uncolored_edge():
    coloring = EdgeColoring(2, {(0, 1): 1, (0, 2): 2})
    with pytest.raises(IncompleteColoringError) as info:
        color_blind_partition(STAR, coloring, 0)
    assert info.value.edge == (0, 3)
    # the leaves that are colored are fine
    assert color_blind_partition(STAR, coloring, 1) == (1,)


def test_coloring_rejects_colors_out_of_range():
    with pytest.raises(PreconditionError) as info:
        EdgeColoring(2, {(0, 1): 3})
    assert info.value.hypothesis == "color-range"
    with pytest.raises(PreconditionError):
        EdgeColoring(0)


def test_coloring_normalizes_edges_and_compares_by_value():
    a = EdgeColoring(2, {(1, 0): 2})
    b = EdgeColoring(2, {(0, 1): 2})
    assert a == b
    assert hash(a) == hash(b)
    assert a.color_of(0, 1) == 2


def test_coloring_helpers():
    coloring = EdgeColoring.from_sequence(C4, [1, 1, 2, 2])
    assert coloring.color_count == 2
    assert coloring.is_total(C4)
    assert coloring.permuted({1: 2, 2: 1}).as_sequence(C4) == (2, 2, 1, 1)
    assert len(coloring.restricted([(0, 1)])) == 1
    assert coloring.with_colors({(2, 3): 1}).color_of(3, 2) == 1
    assert EdgeColoring.monochromatic(C4).colors_used() == {1}


# c* only sees how many edges share a color, not which color it is
@pytest.mark.parametrize("permutation", list(itertools.permutations((1, 2, 3))))
def test_partitions_ignore_color_names(permutation):
    coloring = EdgeColoring(3, dict(zip(K4.edges, (1, 2, 3, 3, 2, 1))))
    renamed = coloring.permuted(dict(zip((1, 2, 3), permutation)))
    assert partitions(K4, renamed) == partitions(K4, coloring)
    assert verify_distinguishing(K4, renamed).proper == verify_distinguishing(K4, coloring).proper


def test_c4_alternating_pairs_is_distinguishing():
    coloring = EdgeColoring(2, {(0, 1): 1, (0, 3): 1, (1, 2): 2, (2, 3): 2})
    report = verify_distinguishing(C4, coloring)
    assert report.proper
    assert report.violations == ()
    assert report.partitions[0] == (2,)
    assert report.partitions[1] == (1, 1)


def test_single_edge_is_never_distinguished():
    k2 = Graph.from_edges([(0, 1)])
    for c in (1, 2):
        report = verify_distinguishing(k2, EdgeColoring(2, {(0, 1): c}))
        assert not report.proper
        assert report.violations == (((0, 1), (1,), (1,)),)


def test_monochromatic_k4_violates_every_edge():
    report = verify_distinguishing(K4, EdgeColoring.monochromatic(K4))
    assert not report.proper
    assert len(report.violations) == 6
    assert set(report.partitions.values()) == {(3,)}


def test_verify_among_ignores_edges_outside_the_scope():
    path = Graph.from_edges([(0, 1), (1, 2), (2, 3)])
    coloring = EdgeColoring(2, {(0, 1): 1, (1, 2): 1, (2, 3): 1})
    assert not verify_distinguishing(path, coloring).proper
    assert verify_among(path, coloring, [0, 1]).proper


def test_partitions_of_selected_vertices():
    coloring = EdgeColoring.from_sequence(C4, [1, 1, 2, 2])
    assert set(partitions(C4, coloring, [0, 2])) == {0, 2}


def test_degree_distinguishing_graphs():
    assert is_degree_distinguishing(STAR)
    assert not is_degree_distinguishing(C4)
