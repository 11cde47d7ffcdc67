from dataclasses import replace

import pytest
from cbcore.errors import EmbeddingError, StructuralViolationError
from cbcore.structure import is_cycle_of_diamonds
from dalkit.generators import complete_graph, diamond_cycle, triangle_saturated
from dalkit.reducibility import (Configuration, apply_reduction, builtin_configuration, builtin_configurations,
                                 check_embedding, check_reducible, enumerate_potential_pairs, find_configuration,
                                 has_extension, iter_embeddings, one_diamond, potential_pair_count, reductions,
                                 sparse, two_diamonds, two_triangle, validate_configuration)

ONE_DIAMOND_EDGES = [("a", "b"), ("a", "c"), ("b", "c"), ("a", "p"), ("b", "q"), ("c", "x"),
                     ("x", "y"), ("x", "z"), ("y", "z"), ("y", "w"), ("z", "w"), ("w", "r")]
ONE_DIAMOND_D = ["a", "b", "c", "x", "y", "z", "w"]


def test_builtin_configurations_are_valid():
    names = [c.name for c in builtin_configurations()]
    assert names == ["2-triangle", "1-diamond", "2-diamonds", "sparse"]
    for config in builtin_configurations():
        validate_configuration(config)
    assert [c.name for c in reductions()] == ["2-triangle", "1-diamond", "2-diamonds"]


def test_boundary_is_derived_from_the_interior():
    config = one_diamond()
    assert {config.names[v] for v in config.boundary} == {"p", "q", "r"}
    td = two_diamonds()
    assert {td.names[v] for v in td.boundary} == {"u", "v"}
    tt = two_triangle()
    assert {tt.names[v] for v in tt.boundary} == {"a1", "a2"}


def test_side_conditions():
    config = one_diamond()
    assert {config.names[x]: ps for x, ps in config.avoided().items()} == {"r": frozenset({(2, 1)})}
    config = two_triangle()
    assert {config.names[x]: ps for x, ps in config.avoided().items()} == {"u": frozenset({(3,)}),
                                                                           "v": frozenset({(3,)})}
    assert sparse().avoid == ()


def test_builtin_configuration_by_name():
    assert builtin_configuration("sparse").name == "sparse"
    with pytest.raises(StructuralViolationError):
        builtin_configuration("3-diamonds")


# 3 colors times 6 ordered pairs of distinct partitions per S-S matching edge; r of 1-diamond never takes (2, 1)
@pytest.mark.parametrize("config, count", [
    (two_diamonds(), 18),
    (sparse(), 324),
    (one_diamond(), 108),
    (replace(one_diamond(), avoid=()), 162),
    (two_triangle(), 81),
])
def test_potential_pair_counts(config, count):
    pairs = list(enumerate_potential_pairs(config))
    assert len(pairs) == count
    assert len(set(pairs)) == count
    assert potential_pair_count(config) == count


def test_potential_pairs_skip_the_side_condition():
    config = one_diamond()
    r = config.vertex_id("r")
    assert all(pair.partition_map()[r] != (2, 1) for pair in enumerate_potential_pairs(config))


def test_potential_pairs_on_s_s_edges_use_distinct_partitions():
    config = two_diamonds()
    for pair in enumerate_potential_pairs(config):
        (first, p), (second, q) = pair.partitions
        assert p != q
    pair = next(enumerate_potential_pairs(config))
    assert pair.describe(config) == "[uv=1; u=(3,), v=(2, 1)]"


def test_dropping_an_m_edge_leaves_s_unsaturated():
    config = Configuration.from_names("mutant", ONE_DIAMOND_EDGES, ONE_DIAMOND_D, [("p", "q")])
    with pytest.raises(StructuralViolationError) as info:
        validate_configuration(config)
    assert info.value.invariant == "saturates"


def test_deleting_a_pendant_breaks_degrees():
    edges = [e for e in ONE_DIAMOND_EDGES if e != ("w", "r")]
    config = Configuration.from_names("mutant", edges, ONE_DIAMOND_D, [("p", "q"), ("w", "r")])
    with pytest.raises(StructuralViolationError) as info:
        validate_configuration(config)
    assert info.value.invariant == "degrees"


def test_interior_without_edges_is_rejected():
    config = Configuration.from_names("mutant", ONE_DIAMOND_EDGES, ["p"], [("p", "q"), ("w", "r")])
    with pytest.raises(StructuralViolationError) as info:
        list(enumerate_potential_pairs(config))
    assert info.value.invariant == "interior-edges"


def test_shrinking_d_to_a_vertex_with_many_outside_neighbors():
    config = Configuration.from_names("mutant", ONE_DIAMOND_EDGES, ["a"], [("p", "q"), ("w", "r")])
    with pytest.raises(StructuralViolationError) as info:
        check_reducible(config)
    assert info.value.invariant == "one-outside-neighbor"


def test_side_condition_inside_d_is_rejected():
    config = Configuration.from_names("mutant", ONE_DIAMOND_EDGES, ONE_DIAMOND_D, [("p", "q"), ("w", "r")],
                                      avoid=[("w", (2, 1))])
    with pytest.raises(StructuralViolationError) as info:
        validate_configuration(config)
    assert info.value.invariant == "avoid"


def test_unknown_interior_name():
    with pytest.raises(StructuralViolationError) as info:
        Configuration.from_names("mutant", ONE_DIAMOND_EDGES, ["nope"], [])
    assert info.value.invariant == "names"
    with pytest.raises(StructuralViolationError) as info:
        Configuration.from_names("mutant", ONE_DIAMOND_EDGES, ONE_DIAMOND_D, [], avoid=[("nope", (3,))])
    assert info.value.invariant == "names"


def test_single_pair_extends():
    config = two_diamonds()
    assert all(has_extension(config, pair) for pair in enumerate_potential_pairs(config))


def test_two_diamonds_is_reducible():
    report = check_reducible(two_diamonds())
    assert report.reducible
    assert report.pairs_checked == 18
    assert report.failures == ()


@pytest.mark.slow
@pytest.mark.parametrize("config", reductions(), ids=lambda c: c.name)
def test_reductions_are_reducible(config):
    report = check_reducible(config)
    assert report.reducible, [p.describe(config) for p in report.failures]
    assert report.pairs_checked == potential_pair_count(config)


# Every failure of the bare 1-diamond puts (2, 1) on r
@pytest.mark.slow
def test_one_diamond_without_its_side_condition():
    config = replace(one_diamond(), avoid=())
    report = check_reducible(config)
    assert not report.reducible
    assert report.pairs_checked == 162
    assert len(report.failures) == 54
    r = config.vertex_id("r")
    assert all(pair.partition_map()[r] == (2, 1) for pair in report.failures)


@pytest.mark.slow
def test_sparse_is_not_reducible():
    report = check_reducible(sparse())
    assert not report.reducible
    assert report.pairs_checked == 324
    assert len(report.failures) == 324


@pytest.mark.slow
def test_parallel_check_agrees():
    assert check_reducible(sparse(), jobs=2) == check_reducible(sparse())


def test_two_diamonds_found_in_a_longer_diamond_cycle():
    graph = diamond_cycle(4)
    config = two_diamonds()
    embedding = find_configuration(graph, config)
    assert embedding is not None
    check_embedding(graph, embedding, config)
    reduced, index = apply_reduction(graph, embedding, config)
    assert reduced.vertex_count == 8
    assert is_cycle_of_diamonds(reduced) == 2
    assert embedding[config.vertex_id("u")] in index


def test_reduction_keeps_the_parity_of_diamonds():
    graph = diamond_cycle(3)
    config = two_diamonds()
    reduced, _ = apply_reduction(graph, find_configuration(graph, config), config)
    assert is_cycle_of_diamonds(reduced) == 1


def test_configurations_need_triangles():
    truncated = triangle_saturated(complete_graph(4))
    assert find_configuration(truncated, two_diamonds()) is None
    assert find_configuration(truncated, sparse()) is not None


def test_every_embedding_is_usable():
    graph = diamond_cycle(4)
    config = two_diamonds()
    embeddings = list(iter_embeddings(graph, config))
    assert embeddings
    for embedding in embeddings:
        check_embedding(graph, embedding, config)


def test_check_embedding_rejects_partial_and_wrong_maps():
    graph = diamond_cycle(4)
    config = two_diamonds()
    embedding = find_configuration(graph, config)
    partial = dict(list(embedding.items())[:-1])
    with pytest.raises(EmbeddingError):
        check_embedding(graph, partial, config)
    collapsed = dict(embedding)
    collapsed[config.vertex_id("u")] = collapsed[config.vertex_id("v")]
    with pytest.raises(EmbeddingError):
        apply_reduction(graph, collapsed, config)
