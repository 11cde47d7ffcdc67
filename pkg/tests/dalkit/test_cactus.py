import random

import pytest
from cbcore.coloring import EdgeColoring, color_blind_partition, partitions, verify_among, verify_distinguishing
from cbcore.errors import InvariantViolationError, PreconditionError
from cbcore.graph import Graph
from cbcore.solver import DalOutcome, compute_dal
from cbcore.structure import InfiniteKind
from dalkit.cactus import (analyze_cactus, color_cactus, color_cycle, color_cycle_graph, color_tree,
                           extend_double_star, extend_hairy_cycle, extend_path_3uniform, plan_extension,
                           triangle_pairs)
from dalkit.generators import (complete_graph, cycle_graph, hairy_cycle, path_graph, random_cactus, random_tree,
                               star_graph)

BOWTIE = Graph.from_edges([(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
# path 0-1-2-3 of degree-3 vertices with pendants 4, 5 at 0, 6 at 1, 7 at 2, 8, 9 at 3
CATERPILLAR = Graph.from_edges([(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (1, 6), (2, 7), (3, 8), (3, 9)])
# triangle 3-4-5 hangs from the bridge 0-3; 4 and 5 have degree 2
TRIANGLE_ON_A_BRIDGE = Graph.from_edges([(0, 1), (0, 2), (0, 3), (3, 4), (3, 5), (4, 5)])
# cycle 0-1-2-3 with a pendant at 0 and the triangle 2-4-5 at 2
TRIANGLE_ON_A_CYCLE = Graph.from_edges([(0, 1), (1, 2), (2, 3), (0, 3), (0, 6), (2, 4), (2, 5), (4, 5)])


def test_tree_layer_rule_on_p5():
    graph = path_graph(5)
    coloring = color_tree(graph)
    assert coloring.as_sequence(graph) == (1, 2, 2, 1)
    assert [color_blind_partition(graph, coloring, v) for v in graph.vertices] == \
        [(1,), (1, 1), (2,), (1, 1), (1,)]


def test_tree_needs_three_vertices():
    with pytest.raises(PreconditionError) as info:
        color_tree(path_graph(2))
    assert info.value.hypothesis == "tree"
    with pytest.raises(PreconditionError):
        color_tree(cycle_graph(4))


@pytest.mark.parametrize("seed", range(200))
def test_random_trees_get_two_colors(seed):
    graph = random_tree(3 + seed % 50 * 4, seed=seed)
    coloring = color_tree(graph, root=seed % graph.vertex_count)
    assert coloring.colors_used() <= {1, 2}
    assert verify_distinguishing(graph, coloring).proper


@pytest.mark.parametrize("n, k", [(4, 2), (6, 3), (8, 2), (10, 3), (12, 2)])
def test_color_cycle(n, k):
    result = color_cycle(n)
    assert result.k == k
    assert verify_distinguishing(cycle_graph(n), result.witness).proper


def test_color_cycle_odd():
    result = color_cycle(7)
    assert result.outcome is DalOutcome.PROVEN_INFINITE
    assert result.certificate.kind is InfiniteKind.ODD_CYCLE


def test_color_cycle_graph_follows_the_vertex_order():
    graph = Graph.from_edges([(0, 2), (2, 1), (1, 3), (3, 0)])
    result = color_cycle_graph(graph)
    assert result.k == 2
    assert verify_distinguishing(graph, result.witness).proper
    with pytest.raises(PreconditionError):
        color_cycle_graph(path_graph(4))


def test_double_star_switches_color_on_equal_degrees():
    graph = path_graph(4)
    coloring = EdgeColoring(2, {(0, 1): 1, (1, 2): 1})
    extended = extend_double_star(graph, 1, 2, coloring)
    assert extended.color_of(2, 3) == 2


def test_double_star_copies_the_shared_color():
    graph = Graph.from_edges([(0, 1), (0, 2), (0, 3), (3, 4)])
    coloring = EdgeColoring(2, {(0, 1): 1, (0, 2): 2, (0, 3): 2})
    extended = extend_double_star(graph, 0, 3, coloring)
    assert extended.color_of(3, 4) == 2
    assert color_blind_partition(graph, extended, 3) == (2,)


def test_double_star_preconditions():
    graph = path_graph(4)
    with pytest.raises(PreconditionError) as info:
        extend_double_star(graph, 1, 2, EdgeColoring(2, {(1, 2): 1}))
    assert info.value.hypothesis == "entry-colored"
    with pytest.raises(PreconditionError) as info:
        extend_double_star(graph, 0, 1, EdgeColoring(2, {(0, 1): 1}))
    assert info.value.hypothesis == "degree>=2"


def test_three_uniform_path_from_a_monochromatic_start():
    coloring = EdgeColoring(2, {(0, 1): 1, (0, 4): 1, (0, 5): 1})
    extended = extend_path_3uniform(CATERPILLAR, [0, 1, 2, 3], coloring)
    parts = partitions(CATERPILLAR, extended, [0, 1, 2, 3])
    assert parts == {0: (3,), 1: (2, 1), 2: (3,), 3: (2, 1)}


def test_three_uniform_path_needs_three_vertices():
    coloring = EdgeColoring(2, {(0, 1): 1, (0, 4): 1, (0, 5): 1})
    with pytest.raises(PreconditionError):
        extend_path_3uniform(CATERPILLAR, [0, 1], coloring)


def _entry(graph, v, colors, k):
    return EdgeColoring(k, dict(zip(graph.incident_edges(v), colors)))


def test_three_uniform_odd_hairy_cycle():
    graph = hairy_cycle(5, [1] * 5)
    coloring = EdgeColoring(3, {(0, 1): 1, (0, 4): 2, (0, 5): 3})
    extended = extend_hairy_cycle(graph, [0, 1, 2, 3, 4], coloring)
    assert verify_among(graph, extended, range(5)).proper
    assert color_blind_partition(graph, extended, 2) == (1, 1, 1)


def test_three_uniform_odd_hairy_cycle_needs_three_colors():
    graph = hairy_cycle(5, [1] * 5)
    coloring = EdgeColoring(2, {(0, 1): 1, (0, 4): 2, (0, 5): 1})
    with pytest.raises(PreconditionError) as info:
        extend_hairy_cycle(graph, [0, 1, 2, 3, 4], coloring)
    assert info.value.hypothesis == "no-3-uniform-odd-cycle"


def test_four_uniform_hairy_cycle():
    graph = hairy_cycle(5, [2] * 5)
    extended = extend_hairy_cycle(graph, [0, 1, 2, 3, 4], _entry(graph, 0, [1, 1, 1, 1], 3))
    assert verify_among(graph, extended, range(5)).proper


def test_hairy_cycle_rejects_adjacent_degree_two_vertices_for_two_colors():
    graph = hairy_cycle(4, [1, 0, 0, 1])
    with pytest.raises(PreconditionError) as info:
        extend_hairy_cycle(graph, [0, 1, 2, 3], _entry(graph, 0, [1, 1, 2], 2))
    assert info.value.hypothesis == "degree-2-independent"


@pytest.mark.parametrize("hairs", [[1, 0, 1, 0, 1, 0], [2, 1, 0, 2, 1], [1, 1, 0, 2], [3, 0, 0, 1, 1]])
def test_mixed_hairy_cycles(hairs):
    n = len(hairs)
    graph = hairy_cycle(n, hairs)
    entry = _entry(graph, 0, [1 + (i % 3) for i in range(graph.degree(0))], 3)
    extended = extend_hairy_cycle(graph, list(range(n)), entry)
    assert verify_among(graph, extended, range(n)).proper


def _random_hairs(rng, n, low, high, two_colors):
    while True:
        hairs = [rng.randint(low, high) for _ in range(n)]
        hairs[0] = max(hairs[0], 1)
        if two_colors and any(hairs[i] == 0 and hairs[(i + 1) % n] == 0 for i in range(n)):
            continue
        if two_colors and n % 2 and all(h == 1 for h in hairs):
            continue
        return hairs


# colors, cycle lengths, hair range (None for one random hair count on every vertex)
HAIRY_CASES = {
    "3-uniform-odd": (3, [5, 7, 9, 11], (1, 1)),
    "d-uniform": (2, list(range(3, 10)), None),
    "mixed-2-colors": (2, list(range(3, 10)), (0, 3)),
    "mixed-3-colors": (3, list(range(4, 10)), (0, 3)),
}


@pytest.mark.slow
@pytest.mark.parametrize("case", sorted(HAIRY_CASES))
@pytest.mark.parametrize("seed", range(50))
def test_random_hairy_cycles_extend_from_any_entry(case, seed):
    rng = random.Random(seed)
    colors, lengths, hair_range = HAIRY_CASES[case]
    n = rng.choice(lengths)
    if hair_range is None:
        hairs = [rng.randint(2, 4)] * n
    else:
        hairs = _random_hairs(rng, n, *hair_range, two_colors=colors == 2)
    graph = hairy_cycle(n, hairs)
    entry = _entry(graph, 0, [rng.randint(1, colors) for _ in range(graph.degree(0))], colors)
    extended = extend_hairy_cycle(graph, list(range(n)), entry)
    assert verify_among(graph, extended, range(n)).proper
    assert extended.colors_used() <= set(range(1, colors + 1))


def test_three_uniform_triangle_needs_distinct_entry_edges():
    graph = hairy_cycle(3, [1, 1, 1])
    # c*(0) = (2, 1) with one color on both triangle edges leaves no extension
    with pytest.raises(InvariantViolationError):
        extend_hairy_cycle(graph, [0, 1, 2], EdgeColoring(3, {(0, 1): 1, (0, 2): 1, (0, 3): 2}))
    extended = extend_hairy_cycle(graph, [0, 1, 2], EdgeColoring(3, {(0, 1): 1, (0, 2): 2, (0, 3): 1}))
    assert verify_among(graph, extended, range(3)).proper


def test_triangle_pairs():
    assert triangle_pairs(TRIANGLE_ON_A_BRIDGE, analyze_cactus(TRIANGLE_ON_A_BRIDGE)) == {3: [((3, 4), (3, 5))]}
    graph = hairy_cycle(3, [1, 1, 1])
    assert triangle_pairs(graph, analyze_cactus(graph)) == {0: [((0, 1), (0, 2))], 1: [((0, 1), (1, 2))],
                                                            2: [((0, 2), (1, 2))]}
    pairs = triangle_pairs(BOWTIE, analyze_cactus(BOWTIE))
    assert list(pairs) == [2]
    assert sorted(pairs[2]) == [((0, 2), (1, 2)), ((2, 3), (2, 4))]
    assert triangle_pairs(CATERPILLAR, analyze_cactus(CATERPILLAR)) == {}


def test_double_star_keeps_triangle_edges_apart():
    coloring = EdgeColoring(3, {(0, 1): 1, (0, 2): 1, (0, 3): 1})
    extended = extend_double_star(TRIANGLE_ON_A_BRIDGE, 0, 3, coloring, [((3, 4), (3, 5))])
    assert extended.color_of(3, 4) != extended.color_of(3, 5)
    assert color_blind_partition(TRIANGLE_ON_A_BRIDGE, extended, 3) == (2, 1)


def test_hairy_cycle_keeps_triangle_edges_apart():
    apart = triangle_pairs(TRIANGLE_ON_A_CYCLE, analyze_cactus(TRIANGLE_ON_A_CYCLE))
    entry = EdgeColoring(3, {(0, 1): 1, (0, 3): 1, (0, 6): 1})
    extended = extend_hairy_cycle(TRIANGLE_ON_A_CYCLE, [0, 1, 2, 3], entry, apart)
    assert extended.color_of(2, 4) != extended.color_of(2, 5)
    assert verify_among(TRIANGLE_ON_A_CYCLE, extended, [0, 1, 2, 3]).proper


@pytest.mark.parametrize("graph, seed_vertex", [(TRIANGLE_ON_A_BRIDGE, 0), (TRIANGLE_ON_A_CYCLE, 0)])
def test_triangles_are_colored_from_a_distant_seed(graph, seed_vertex):
    result = color_cactus(graph, colors=3, seed_vertex=seed_vertex)
    assert result.k <= 3
    assert verify_distinguishing(graph, result.witness).proper


def test_seed_attempts_are_counted_across_seed_vertices(monkeypatch):
    def stuck(graph, analysis, frontier):
        raise InvariantViolationError("stuck")

    monkeypatch.setattr("dalkit.cactus.extend_frontier", stuck)
    monkeypatch.setattr("dalkit.cactus.SEED_ATTEMPTS", 20)
    # 14 seeds at the degree-4 vertex of the bowtie, then 2 at each degree-2 vertex
    with pytest.raises(InvariantViolationError, match="after 20 attempts"):
        color_cactus(BOWTIE, colors=3)


def test_analyze_cactus():
    analysis = analyze_cactus(BOWTIE)
    assert analysis.is_cactus
    assert not analysis.degree2_independent
    assert not analysis.has_3_uniform_odd_cycle
    assert len(analysis.cycle_blocks()) == 2

    analysis = analyze_cactus(hairy_cycle(3, [1, 1, 1]))
    assert analysis.has_3_uniform_odd_cycle
    assert analysis.degree2_independent

    assert not analyze_cactus(complete_graph(4)).is_cactus
    assert analyze_cactus(cycle_graph(5)).is_single_cycle
    assert analyze_cactus(path_graph(2)).is_single_edge


def test_plan_extension_reaches_every_block():
    analysis = analyze_cactus(BOWTIE)
    seed = EdgeColoring(3, {e: 1 for e in BOWTIE.incident_edges(2)})
    frontier = plan_extension(BOWTIE, analysis, 2, seed)
    assert sorted(i for i, _ in frontier.pending_blocks) == [0, 1]
    assert all(entry == 2 for _, entry in frontier.pending_blocks)


def test_hairy_triangle_needs_three_colors():
    graph = hairy_cycle(3, [1, 1, 1])
    result = color_cactus(graph, colors=3)
    assert result.outcome is DalOutcome.FINITE
    assert result.k <= 3
    assert verify_distinguishing(graph, result.witness).proper
    with pytest.raises(PreconditionError) as info:
        color_cactus(graph, colors=2)
    assert info.value.hypothesis == "no-3-uniform-odd-cycle"


def test_color_cactus_special_cases():
    assert color_cactus(path_graph(2)).certificate.kind is InfiniteKind.SINGLE_EDGE
    assert color_cactus(cycle_graph(5)).outcome is DalOutcome.PROVEN_INFINITE
    assert color_cactus(cycle_graph(8)).k == 2
    assert color_cactus(star_graph(4)).k == 1


def test_color_cactus_preconditions():
    with pytest.raises(PreconditionError) as info:
        color_cactus(complete_graph(4))
    assert info.value.hypothesis == "cactus"
    with pytest.raises(PreconditionError) as info:
        color_cactus(BOWTIE, colors=4)
    assert info.value.hypothesis == "colors"
    with pytest.raises(PreconditionError) as info:
        color_cactus(BOWTIE, colors=2)
    assert info.value.hypothesis == "degree-2-independent"
    with pytest.raises(PreconditionError) as info:
        color_cactus(BOWTIE, seed_vertex=7, colors=3)
    assert info.value.hypothesis == "seed-vertex"


def test_bowtie_with_three_colors():
    result = color_cactus(BOWTIE, colors=3)
    assert result.k <= 3
    assert verify_distinguishing(BOWTIE, result.witness).proper


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_random_cacti_with_two_colors(seed):
    graph = random_cactus(4 + seed % 6, seed=seed, two_color_hypotheses=True)
    result = color_cactus(graph, colors=2)
    if result.outcome is DalOutcome.PROVEN_INFINITE:
        assert graph.edge_count == 1
        return
    assert result.k <= 2
    assert verify_distinguishing(graph, result.witness).proper


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_random_cacti_with_three_colors(seed):
    graph = random_cactus(4 + seed % 6, seed=seed)
    result = color_cactus(graph, colors=3)
    if result.outcome is DalOutcome.PROVEN_INFINITE:
        return
    assert result.k <= 3
    assert verify_distinguishing(graph, result.witness).proper


# Constructive colorings never use fewer colors than the exact solver needs
@pytest.mark.slow
@pytest.mark.parametrize("seed", range(15))
def test_small_cacti_agree_with_the_exact_solver(seed):
    graph = random_cactus(3, seed=seed, max_cycle=4)
    if graph.edge_count > 12:
        pytest.skip("too large for the exact solver")
    result = color_cactus(graph, colors=3)
    exact = compute_dal(graph)
    assert result.outcome == exact.outcome
    if exact.outcome is DalOutcome.FINITE:
        assert result.k >= exact.k
