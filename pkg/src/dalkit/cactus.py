"""
cactus.py

This module provides the constructive colorings of trees, cycles and cacti.

A cactus is colored block by block. All edges at a seed vertex are colored first; the blocks are
then visited along the block-cutpoint tree, each one entered through a vertex whose edges are all
colored. An edge block is extended with the double-star rule, a cycle block with the hairy-cycle
rule, which in turn walks the cycle in runs of equal degree and applies the path rules. After a
block is extended every vertex in it is fully colored and distinguished from its block neighbors,
so the union over all blocks is distinguishing.

The closed-form rules are checked by the verifier as they are applied. When a rule does not cover a
case, or its output fails the check, the cycle is re-threaded by an exact sweep over the cycle
vertices that keeps the entry vertex fixed.

Some entry colorings of a triangle block have no extension, whatever the palette. Block rules keep the
two edges at such a triangle's entry in different colors, permuting the colors on edges that leave the
block when that is enough and re-threading the block otherwise.

Classes:
    CactusAnalysis: Block structure and the hypotheses of the 2- and 3-color constructions.
    ExtensionFrontier: Seed coloring and the order in which blocks are extended.

Functions:
    color_tree: Layer rule 2-coloring of a tree.
    color_cycle: dal(C_n) with a witness.
    color_cycle_graph: color_cycle on a graph that is a cycle.
    extend_double_star, extend_path_3uniform, extend_path_duniform, extend_hairy_cycle: Block rules.
    analyze_cactus: Computes a CactusAnalysis.
    triangle_pairs: Edge pairs at triangle entries that must take different colors.
    color_cactus: 2- or 3-coloring of a cactus.
"""
import itertools
import logging
from collections import Counter, defaultdict, deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

import networkx as nx

from cbcore.coloring import EdgeColoring, Partition, canonical_partition, color_blind_partition, \
    is_degree_distinguishing, verify_among, verify_distinguishing
from cbcore.errors import IncompleteColoringError, InvariantViolationError, PreconditionError
from cbcore.graph import Edge, Graph, normalize_edge, to_networkx
from cbcore.solver import DalResult
from cbcore.structure import BlockDecomposition, InfiniteCertificate, InfiniteKind, block_decomposition, \
    is_connected, is_tree
from dalkit.generators import cycle_graph

logger = logging.getLogger(__name__)

# Extensions introduce these colors, whatever the seed used.
EXTENSION_PALETTE = (1, 2)

# Seed colorings tried before color_cactus gives up.
SEED_ATTEMPTS = 64


def _partition_at(graph: Graph, assignment: Mapping[Edge, int], v: int) -> Partition:
    counts: Counter = Counter()
    for e in graph.incident_edges(v):
        if e not in assignment:
            raise IncompleteColoringError(e)
        counts[assignment[e]] += 1
    return canonical_partition(counts.values())


def _require_full(graph: Graph, assignment: Mapping[Edge, int], v: int) -> None:
    missing = [e for e in graph.incident_edges(v) if e not in assignment]
    if missing:
        raise PreconditionError("entry-colored", f"edge {missing[0]} at entry vertex {v} is not colored")


def _count_vectors(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Compositions of total into parts nonnegative parts, the first part largest first."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _count_vectors(total - first, parts - 1):
            yield (first,) + rest


def _spread(edges: Sequence[Edge], palette: Sequence[int], vector: Sequence[int],
            apart: Sequence[Tuple[Edge, Edge]] = ()) -> Optional[Dict[Edge, int]]:
    """
    Puts vector[i] copies of palette[i] on the edges, the two edges of each pair in `apart` taking
    different colors. Each pair takes the two colors with most copies left, which places the colors
    whenever that is possible. Returns None when it is not.
    """
    left = Counter({c: n for c, n in zip(palette, vector) if n})
    placed: Dict[Edge, int] = {}
    for e, f in apart:
        if e not in edges or f not in edges:
            continue
        top = sorted((c for c in left if left[c] > 0), key=lambda c: (-left[c], c))[:2]
        if len(top) < 2:
            return None
        placed[e], placed[f] = top
        for c in top:
            left[c] -= 1
    singles = [e for e in edges if e not in placed]
    placed.update(zip(singles, sorted(left.elements())))
    return placed


def _keep_apart(graph: Graph, coloring: EdgeColoring, vertices: Iterable[int], fixed: Set[Edge],
                apart: Mapping[int, Sequence[Tuple[Edge, Edge]]]) -> Optional[EdgeColoring]:
    """
    Permutes the colors on the edges at each vertex outside `fixed` so that the pairs in `apart`
    differ. Partitions do not change. Returns None when some vertex has too few distinct colors.
    """
    updates: Dict[Edge, int] = {}
    assignment = coloring.assignment
    for v in vertices:
        pairs = [(e, f) for e, f in apart.get(v, ()) if e not in fixed and f not in fixed]
        if all(assignment[e] != assignment[f] for e, f in pairs):
            continue
        movable = sorted(e for e in graph.incident_edges(v) if e not in fixed)
        counts = Counter(assignment[e] for e in movable)
        palette = sorted(counts)
        placed = _spread(movable, palette, [counts[c] for c in palette], pairs)
        if placed is None:
            return None
        updates.update(placed)
    return coloring.with_colors(updates) if updates else coloring


def _complete_vertex(graph: Graph, assignment: Mapping[Edge, int], v: int, palette: Sequence[int],
                     avoid: Iterable[Partition] = (), prefer: Sequence[Partition] = (),
                     apart: Sequence[Tuple[Edge, Edge]] = ()) -> Optional[Dict[Edge, int]]:
    """
    Colors the uncolored edges at v so that c*(v) avoids the given partitions and the pairs in
    `apart` differ, taking the first reachable partition of `prefer` when there is one. Returns the
    new assignments or None.
    """
    avoid = set(avoid)
    free = sorted(e for e in graph.incident_edges(v) if e not in assignment)
    fixed = Counter(assignment[e] for e in graph.incident_edges(v) if e in assignment)
    options: Dict[Partition, Tuple[int, ...]] = {}
    for vector in _count_vectors(len(free), len(palette)):
        counts = Counter(fixed)
        for c, n in zip(palette, vector):
            counts[c] += n
        p = canonical_partition(counts.values())
        if p not in avoid and p not in options and _spread(free, palette, vector, apart) is not None:
            options[p] = vector
    if not options:
        return None
    choice = next((p for p in prefer if p in options), next(iter(options)))
    return _spread(free, palette, options[choice], apart)


def _gate(graph: Graph, coloring: EdgeColoring, scope: Iterable[int], rule: str) -> EdgeColoring:
    report = verify_among(graph, coloring, scope)
    if not report.proper:
        raise InvariantViolationError(f"{rule} produced a coloring that is not distinguishing: {report.violations[0]}")
    return coloring


def _check_path(graph: Graph, path: Sequence[int]) -> None:
    for u, v in zip(path, path[1:]):
        if not graph.has_edge(u, v):
            raise PreconditionError("path", f"{u} and {v} are not adjacent")
    if len(set(path)) != len(path):
        raise PreconditionError("path", "path repeats a vertex")


def color_tree(tree: Graph, root: int = 0) -> EdgeColoring:
    """
    2-colors a tree by layers from a root: an edge between layers i and i + 1 gets color 1 when
    i = 0 or 3 (mod 4) and color 2 otherwise. Non-leaf vertices at even depth end up with (d) and
    those at odd depth with (d - 1, 1).

    Raises:
        PreconditionError: If the graph is not a tree on at least 3 vertices.
    """
    if tree.vertex_count < 3 or not is_tree(tree):
        raise PreconditionError("tree", "expected a tree on at least 3 vertices")
    if not 0 <= root < tree.vertex_count:
        raise PreconditionError("root", f"root {root} is not a vertex")
    depth = nx.single_source_shortest_path_length(to_networkx(tree), root)
    colors = {}
    for u, v in tree.edges:
        layer = min(depth[u], depth[v])
        colors[(u, v)] = 1 if layer % 4 in (0, 3) else 2
    witness = EdgeColoring(2, colors)
    return _gate(tree, witness, tree.vertices, "tree layer rule")


def color_cycle(n: int) -> DalResult:
    """
    dal(C_n): 2 when n = 0 (mod 4), 3 when n = 2 (mod 4), infinite when n is odd.

    The witness colors the edges (i, i + 1) of cycle_graph(n) in equal pairs, consecutive pairs
    differing, so partitions alternate between (2) and (1, 1).
    """
    if n < 3:
        raise PreconditionError("n>=3", f"a cycle needs at least 3 vertices, got {n}")
    if n % 2:
        return DalResult.proven_infinite(InfiniteCertificate(InfiniteKind.ODD_CYCLE, frozenset(range(n))))
    pairs = n // 2
    pair_colors = [1 + j % 2 for j in range(pairs)]
    if pairs % 2:
        pair_colors[-1] = 3
    k = max(pair_colors)
    witness = EdgeColoring(k, {normalize_edge(i, (i + 1) % n): pair_colors[i // 2] for i in range(n)})
    report = verify_distinguishing(cycle_graph(n), witness)
    if not report.proper:
        raise InvariantViolationError(f"cycle witness for n = {n} is not distinguishing")
    return DalResult.finite(k, witness)


def extend_double_star(graph: Graph, u: int, v: int, coloring: EdgeColoring,
                       apart: Sequence[Tuple[Edge, Edge]] = ()) -> EdgeColoring:
    """
    Colors the edges at v given a coloring of every edge at u, so that c*(u) != c*(v).

    Every v-edge copies c(uv), except when d(u) = d(v) and c*(u) = (d): then the other v-edges
    take the color of {1, 2} not used on uv. Pairs of v-edges in `apart` must differ, so v then
    gets any partition other than c*(u) over the whole palette.

    Raises:
        PreconditionError: If u or v has degree below 2, they are not adjacent, u is not fully
            colored or some other edge at v is colored.
        InvariantViolationError: If no partition at v keeps the pairs in `apart` apart.
    """
    if not graph.has_edge(u, v):
        raise PreconditionError("adjacent", f"{u} and {v} are not adjacent")
    for x in (u, v):
        if graph.degree(x) < 2:
            raise PreconditionError("degree>=2", f"center {x} has degree {graph.degree(x)}")
    if coloring.color_count < 2:
        raise PreconditionError("k>=2", "extensions need at least two colors")
    _require_full(graph, coloring.assignment, u)
    uv = normalize_edge(u, v)
    rest = [e for e in graph.incident_edges(v) if e != uv]
    if any(e in coloring.assignment for e in rest):
        raise PreconditionError("edges-free", f"edges at {v} other than {uv} must be uncolored")

    if apart:
        palette = tuple(range(1, coloring.color_count + 1))
        updates = _complete_vertex(graph, coloring.assignment, v, palette,
                                   avoid=(color_blind_partition(graph, coloring, u),), apart=apart)
        if updates is None:
            raise InvariantViolationError(f"no partition at {v} keeps its triangle edges apart")
        return _gate(graph, coloring.with_colors(updates), (u, v), "double-star rule")

    base = coloring.assignment[uv]
    color = base
    d = graph.degree(u)
    if d == graph.degree(v) and color_blind_partition(graph, coloring, u) == (d,):
        color = min(set(EXTENSION_PALETTE) - {base})
    extended = coloring.with_colors({e: color for e in rest})
    return _gate(graph, extended, (u, v), "double-star rule")


def extend_path_3uniform(graph: Graph, path: Sequence[int], coloring: EdgeColoring) -> EdgeColoring:
    """
    Colors every edge at v_2..v_t of a path of degree-3 vertices, given all edges at v_1.

    With a = c(v_1 v_2), b the color of {1, 2} other than a and d the color of {1, 2} other than b,
    the path edges from v_2 on take one color and the off-path edge at v_i takes one color for even
    i and another for odd i; the two off-path edges at v_t take the path color and the parity color.

    Raises:
        PreconditionError: If t < 3, a vertex does not have degree 3, v_1 is not fully colored or
            an edge at v_2..v_t other than v_1 v_2 is colored.
    """
    t = len(path)
    if t < 3:
        raise PreconditionError("t>=3", f"path has {t} vertices")
    _check_path(graph, path)
    if any(graph.degree(x) != 3 for x in path):
        raise PreconditionError("3-uniform", "every path vertex must have degree 3")
    assignment = dict(coloring.assignment)
    _require_full(graph, assignment, path[0])
    first = normalize_edge(path[0], path[1])
    if any(e in assignment and e != first for x in path[1:] for e in graph.incident_edges(x)):
        raise PreconditionError("edges-free", "edges at v_2..v_t must be uncolored")

    a = assignment[first]
    b = min(set(EXTENSION_PALETTE) - {a})
    d = min(set(EXTENSION_PALETTE) - {b})
    start = _partition_at(graph, assignment, path[0])
    second_hair = None
    if start == (3,):
        path_color, even_hair, odd_hair = b, d, b
    elif a == d:
        path_color, even_hair, odd_hair = a, a, b
    else:
        path_color, even_hair, odd_hair = b, d, b
        if start == (1, 1, 1):
            # v_2 sees colors a, b, d otherwise
            second_hair = b
    logger.debug("3-uniform path from %d: start %s, a=%d b=%d d=%d", path[0], start, a, b, d)

    for i in range(1, t - 1):
        assignment[normalize_edge(path[i], path[i + 1])] = path_color
    for i in range(1, t):
        x = path[i]
        hair = even_hair if (i + 1) % 2 == 0 else odd_hair
        if i == 1 and second_hair is not None:
            hair = second_hair
        off = sorted(e for e in graph.incident_edges(x) if e not in assignment)
        if i == t - 1:
            assignment[off[0]] = path_color
            off = off[1:]
        for e in off:
            assignment[e] = hair
    return _gate(graph, EdgeColoring(coloring.color_count, assignment), path, "3-uniform path rule")


def extend_path_duniform(graph: Graph, path: Sequence[int], coloring: EdgeColoring) -> EdgeColoring:
    """
    Colors the edges at v_2..v_t of a path of degree-d vertices (d >= 4), given all edges at v_1
    and exactly one edge at v_t off the path.

    Path edges from v_2 on take c(v_1 v_2) when it is 1 or 2, and color 1 otherwise. Inner vertices
    alternate between (d) and (d - 1, 1), starting with (d - 1, 1) when c*(v_1) = (d); v_t takes a
    partition of (d), (d - 1, 1), (d - 2, 2), (d - 2, 1, 1) different from its path neighbors.

    Raises:
        PreconditionError: If t < 2, the degrees differ or are below 4, or the precolored edges are
            not as described.
        InvariantViolationError: If no partition is left for some vertex.
    """
    t = len(path)
    if t < 2:
        raise PreconditionError("t>=2", f"path has {t} vertices")
    _check_path(graph, path)
    d = graph.degree(path[0])
    if d < 4 or any(graph.degree(x) != d for x in path):
        raise PreconditionError("d-uniform", "path vertices must share one degree d >= 4")
    assignment = dict(coloring.assignment)
    _require_full(graph, assignment, path[0])
    first = normalize_edge(path[0], path[1])
    last_in = normalize_edge(path[-2], path[-1])
    for x in path[1:-1]:
        if any(e in assignment and e != first for e in graph.incident_edges(x)):
            raise PreconditionError("edges-free", f"edges at inner vertex {x} must be uncolored")
    extra = [e for e in graph.incident_edges(path[-1]) if e != last_in and e in assignment]
    if len(extra) != 1 or (t > 2 and last_in in assignment):
        raise PreconditionError("one-edge-at-end", f"expected exactly one colored edge at {path[-1]} off the path")

    a = assignment[first]
    path_color = a if a in EXTENSION_PALETTE else 1
    for i in range(1, t - 1):
        assignment[normalize_edge(path[i], path[i + 1])] = path_color
    start = _partition_at(graph, assignment, path[0])
    full, mixed = (d,), (d - 1, 1)
    previous = start
    for i in range(1, t - 1):
        even = (i + 1) % 2 == 0
        target = mixed if (start == full) == even else full
        updates = _complete_vertex(graph, assignment, path[i], EXTENSION_PALETTE, avoid=(previous,), prefer=(target,))
        if updates is None:
            raise InvariantViolationError(f"no partition left at {path[i]}")
        assignment.update(updates)
        previous = _partition_at(graph, assignment, path[i])

    on_path = set(path)
    end = path[-1]
    avoid = {_partition_at(graph, assignment, w) for w in graph.neighbors(end)
             if w in on_path and all(e in assignment for e in graph.incident_edges(w))}
    updates = _complete_vertex(graph, assignment, end, EXTENSION_PALETTE, avoid=avoid,
                               prefer=(full, mixed, (d - 2, 2), (d - 2, 1, 1)))
    if updates is None:
        raise InvariantViolationError(f"no partition left at {end}")
    assignment.update(updates)
    logger.debug("%d-uniform path from %d: %d vertices", d, path[0], t)
    return _gate(graph, EdgeColoring(coloring.color_count, assignment), path, "d-uniform path rule")


def _cycle_edges(cycle: Sequence[int]) -> List[Edge]:
    n = len(cycle)
    return [normalize_edge(cycle[i], cycle[(i + 1) % n]) for i in range(n)]


def _hair(graph: Graph, on_cycle: Set[Edge], v: int) -> Edge:
    return next(e for e in graph.incident_edges(v) if e not in on_cycle)


def _three_uniform_odd(graph: Graph, cycle: Sequence[int], coloring: EdgeColoring) -> Optional[EdgeColoring]:
    """
    3-colors a 3-uniform hairy odd cycle with at least 5 vertices from all edges at cycle[0]. Smaller
    cycles are left to the exact sweep.
    """
    n = len(cycle)
    if n < 5:
        return None
    ring = _cycle_edges(cycle)
    on_cycle = set(ring)
    v = [None] + list(cycle)  # 1-based
    assignment = dict(coloring.assignment)
    a = assignment[ring[0]]
    b = assignment[ring[-1]]
    half = (n - 1) // 2

    def path_edge(i: int) -> Edge:
        return normalize_edge(v[i], v[i + 1])

    def hair(i: int) -> Edge:
        return _hair(graph, on_cycle, v[i])

    if a != b:
        d = min({1, 2, 3} - {a, b})
        for j in range(1, half):
            assignment[path_edge(2 * j)] = a
            assignment[path_edge(2 * j + 1)] = b
            assignment[hair(2 * j + 1)] = d
        for j in range(1, half + 1):
            assignment[hair(2 * j)] = a
        assignment[path_edge(2 * half)] = b
        assignment[hair(n)] = b
    else:
        d, e = sorted({1, 2, 3} - {a})
        for j in range(2, n):
            assignment[path_edge(j)] = d
        for j in range(1, half + 1):
            assignment[hair(2 * j)] = e
        for j in range(1, half):
            assignment[hair(2 * j + 1)] = d
        assignment[hair(n)] = e
    return EdgeColoring(max(coloring.color_count, 3), assignment)


def _sweep_runs(graph: Graph, cycle: Sequence[int], coloring: EdgeColoring) -> Optional[EdgeColoring]:
    """
    Walks cycle[1:-1] in maximal runs of equal degree, extending each run with the path rules, then
    closes at the last vertex, which must avoid both cycle neighbors.
    """
    n = len(cycle)
    current = coloring
    pos = 1
    while pos < n - 1:
        d = graph.degree(cycle[pos])
        end = pos
        while end + 1 < n - 1 and graph.degree(cycle[end + 1]) == d:
            end += 1
        run = list(cycle[pos:end + 1])
        if graph.degree(cycle[pos - 1]) == d:
            path = [cycle[pos - 1]] + run
        else:
            # a degree change needs no check, so the first vertex is colored freely
            updates = _complete_vertex(graph, current.assignment, run[0], EXTENSION_PALETTE)
            current = current.with_colors(updates)
            path = run
        if d == 3 and len(path) >= 3:
            current = extend_path_3uniform(graph, path, current)
        elif d >= 4 and len(path) >= 2:
            exit_edge = normalize_edge(path[-1], cycle[end + 1])
            current = extend_path_duniform(graph, path, current.with_colors({exit_edge: 1}))
        else:
            for prev, x in zip(path, path[1:]):
                avoid = (_partition_at(graph, current.assignment, prev),)
                updates = _complete_vertex(graph, current.assignment, x, EXTENSION_PALETTE, avoid=avoid)
                if updates is None:
                    return None
                current = current.with_colors(updates)
        pos = end + 1

    last = cycle[-1]
    avoid = (_partition_at(graph, current.assignment, cycle[-2]), _partition_at(graph, current.assignment, cycle[0]))
    updates = _complete_vertex(graph, current.assignment, last, EXTENSION_PALETTE, avoid=avoid)
    if updates is None:
        return None
    return current.with_colors(updates)


def _thread(graph: Graph, cycle: Sequence[int], coloring: EdgeColoring, palette: Sequence[int],
            apart: Mapping[int, Sequence[Tuple[Edge, Edge]]]) -> Optional[EdgeColoring]:
    """
    Exact sweep around a cycle from its fully colored first vertex. The state after cycle[i] is the
    color of the edge leaving it and its partition; each step picks the leaving color and the color
    counts on the remaining edges at the vertex, skipping counts that cannot keep its pairs apart.
    """
    n = len(cycle)
    assignment = coloring.assignment
    ring = _cycle_edges(cycle)
    start = _partition_at(graph, assignment, cycle[0])
    layer: Dict[Tuple[int, Partition], Optional[tuple]] = {(assignment[ring[0]], start): None}
    history = [layer]
    for i in range(1, n):
        x = cycle[i]
        out_edge = ring[i]
        outs = [assignment[out_edge]] if out_edge in assignment else list(palette)
        rest = [e for e in graph.incident_edges(x) if e != ring[i - 1] and e != out_edge]
        fixed = Counter(assignment[e] for e in rest if e in assignment)
        free_edges = sorted(e for e in rest if e not in assignment)
        pairs = apart.get(x, ())
        nxt: Dict[Tuple[int, Partition], tuple] = {}
        for state in layer:
            incoming, previous = state
            for out in outs:
                for vector in _count_vectors(len(free_edges), len(palette)):
                    if pairs and _spread(free_edges, palette, vector, pairs) is None:
                        continue
                    counts = Counter(fixed)
                    counts[incoming] += 1
                    counts[out] += 1
                    for c, m in zip(palette, vector):
                        counts[c] += m
                    p = canonical_partition(counts.values())
                    if p == previous or (i == n - 1 and p == start):
                        continue
                    nxt.setdefault((out, p), (state, vector))
        if not nxt:
            logger.debug("exact sweep from %d found no extension", cycle[0])
            return None
        history.append(nxt)
        layer = nxt

    updates: Dict[Edge, int] = {}
    state = next(iter(layer))
    for i in range(n - 1, 0, -1):
        previous_state, vector = history[i][state]
        x = cycle[i]
        if ring[i] not in assignment:
            updates[ring[i]] = state[0]
        free = sorted(e for e in graph.incident_edges(x)
                      if e != ring[i - 1] and e != ring[i] and e not in assignment)
        updates.update(_spread(free, palette, vector, apart.get(x, ())))
        state = previous_state
    return coloring.with_colors(updates)


def extend_hairy_cycle(graph: Graph, cycle: Sequence[int], coloring: EdgeColoring,
                       apart: Optional[Mapping[int, Sequence[Tuple[Edge, Edge]]]] = None) -> EdgeColoring:
    """
    Colors every edge at the vertices of a cycle given all edges at cycle[0], so that the result is
    distinguishing among the cycle vertices.

    Args:
        graph: The host graph; the edges at cycle vertices form a hairy cycle.
        cycle: The cycle vertices in order, starting at the entry vertex.
        coloring: Colors every edge at cycle[0] and no other edge at the cycle vertices. Its color
            count is the palette size.
        apart: Pairs of off-cycle edges, by cycle vertex, that must take different colors.

    Returns:
        EdgeColoring: The extension.

    Raises:
        PreconditionError: If the vertices do not form a cycle, the precoloring is wrong, two
            degree-2 cycle vertices are adjacent under 2 colors, or the cycle is a 3-uniform odd
            cycle under 2 colors.
        InvariantViolationError: If the entry coloring has no extension.
    """
    n = len(cycle)
    if n < 3:
        raise PreconditionError("cycle", f"a cycle needs at least 3 vertices, got {n}")
    _check_path(graph, cycle)
    if not graph.has_edge(cycle[-1], cycle[0]):
        raise PreconditionError("cycle", f"{cycle[-1]} and {cycle[0]} are not adjacent")
    assignment = coloring.assignment
    _require_full(graph, assignment, cycle[0])
    entry_edges = set(graph.incident_edges(cycle[0]))
    if any(e in assignment and e not in entry_edges for x in cycle[1:] for e in graph.incident_edges(x)):
        raise PreconditionError("edges-free", "edges at cycle vertices other than the entry must be uncolored")
    k = coloring.color_count
    degrees = [graph.degree(x) for x in cycle]
    if k < 3 and any(degrees[i] == 2 and degrees[(i + 1) % n] == 2 for i in range(n)):
        raise PreconditionError("degree-2-independent", "two degree-2 cycle vertices are adjacent")

    extended: Optional[EdgeColoring] = None
    try:
        if all(d == 3 for d in degrees) and n % 2:
            if k < 3:
                raise PreconditionError("no-3-uniform-odd-cycle", "a 3-uniform odd hairy cycle needs 3 colors")
            logger.debug("hairy cycle at %d: 3-uniform odd, %d vertices", cycle[0], n)
            extended = _three_uniform_odd(graph, cycle, coloring)
        elif len(set(degrees)) == 1 and degrees[0] >= 4:
            logger.debug("hairy cycle at %d: %d-uniform, %d vertices", cycle[0], degrees[0], n)
            extended = extend_path_duniform(graph, cycle, coloring)
        else:
            logger.debug("hairy cycle at %d: runs of degrees %s", cycle[0], degrees)
            extended = _sweep_runs(graph, cycle, coloring)
    except InvariantViolationError as e:
        logger.debug("closed-form extension failed: %s", e)
        extended = None
    if extended is not None and not verify_among(graph, extended, cycle).proper:
        extended = None
    apart = apart or {}
    if extended is not None:
        extended = _keep_apart(graph, extended, cycle[1:], set(_cycle_edges(cycle)), apart)
    if extended is None:
        extended = _thread(graph, cycle, coloring, tuple(range(1, k + 1)), apart)
    if extended is None:
        raise InvariantViolationError(f"the coloring at {cycle[0]} does not extend around the cycle {list(cycle)}")
    return _gate(graph, extended, cycle, "hairy-cycle rule")


@dataclass(frozen=True)
class CactusAnalysis:
    """
    Structure of a graph as a cactus.

    Attributes:
        is_cactus (bool): Connected, and every block is a cycle or a single edge.
        blocks (BlockDecomposition): The blocks.
        has_3_uniform_odd_cycle (bool): Some odd cycle block has only degree-3 vertices.
        degree2_independent (bool): No two degree-2 vertices are adjacent.
        is_single_cycle (bool): The graph is a cycle.
        is_single_edge (bool): The graph is K_2.
    """
    is_cactus: bool
    blocks: BlockDecomposition
    has_3_uniform_odd_cycle: bool
    degree2_independent: bool
    is_single_cycle: bool
    is_single_edge: bool

    def cycle_blocks(self) -> List[int]:
        return [i for i, b in enumerate(self.blocks.blocks) if len(b) > 1]


def _is_cycle_block(block: FrozenSet[Edge]) -> bool:
    ends = Counter(x for e in block for x in e)
    return len(ends) == len(block) and all(c == 2 for c in ends.values())


def analyze_cactus(graph: Graph) -> CactusAnalysis:
    blocks = block_decomposition(graph)
    cactus = is_connected(graph) and all(len(b) == 1 or _is_cycle_block(b) for b in blocks.blocks)
    odd_uniform = False
    for i, b in enumerate(blocks.blocks):
        if len(b) > 1 and len(b) % 2 and _is_cycle_block(b):
            if all(graph.degree(x) == 3 for x in blocks.block_vertices(i)):
                odd_uniform = True
    return CactusAnalysis(
        is_cactus=cactus,
        blocks=blocks,
        has_3_uniform_odd_cycle=odd_uniform,
        degree2_independent=all(not (graph.degree(u) == 2 and graph.degree(v) == 2) for u, v in graph.edges),
        is_single_cycle=graph.vertex_count >= 3 and graph.is_regular(2) and is_connected(graph),
        is_single_edge=graph.vertex_count == 2 and graph.edge_count == 1,
    )


def triangle_pairs(graph: Graph, analysis: CactusAnalysis) -> Dict[int, List[Tuple[Edge, Edge]]]:
    """
    Pairs of edges, by vertex, that a block extension keeps in different colors: the two edges at
    the third corner of a triangle block whose other corners have degree 2, and the two edges at
    every corner of a triangle block whose corners all have degree 3.

    An entry coloring that repeats a color on such a pair need not extend over the triangle. In the
    first case the two degree-2 corners always see the same partition; in the second the entry sees
    (2, 1), so the other corners would need (3) and (1, 1, 1) with a shared edge color between them.
    """
    pairs: Dict[int, List[Tuple[Edge, Edge]]] = defaultdict(list)
    for i in analysis.cycle_blocks():
        block = analysis.blocks.blocks[i]
        if len(block) != 3:
            continue
        corners = sorted(analysis.blocks.block_vertices(i))
        degrees = sorted(graph.degree(x) for x in corners)
        if degrees[:2] == [2, 2]:
            apexes = [x for x in corners if graph.degree(x) > 2]
        elif degrees == [3, 3, 3]:
            apexes = corners
        else:
            continue
        for x in apexes:
            first, second = sorted(e for e in block if x in e)
            pairs[x].append((first, second))
    return dict(pairs)


@dataclass(frozen=True)
class ExtensionFrontier:
    """
    Where a block-by-block extension starts and the order it follows.

    Attributes:
        seed_vertex (int): The vertex colored first.
        colored (EdgeColoring): The seed coloring, covering every edge at seed_vertex.
        pending_blocks (Tuple[Tuple[int, int], ...]): (block index, entry vertex) in processing
            order; the entry of each block is fully colored by the seed or an earlier block.
    """
    seed_vertex: int
    colored: EdgeColoring
    pending_blocks: Tuple[Tuple[int, int], ...]


def plan_extension(graph: Graph, analysis: CactusAnalysis, seed_vertex: int, seed: EdgeColoring) -> ExtensionFrontier:
    """Orders the blocks breadth-first along the block-cutpoint tree from the seed vertex."""
    blocks = analysis.blocks
    at: Dict[int, List[int]] = defaultdict(list)
    for i in range(len(blocks.blocks)):
        for x in sorted(blocks.block_vertices(i)):
            at[x].append(i)
    pending: List[Tuple[int, int]] = []
    seen_blocks: Set[int] = set()
    reached = {seed_vertex}
    queue = deque([seed_vertex])
    while queue:
        x = queue.popleft()
        for i in at[x]:
            if i in seen_blocks:
                continue
            seen_blocks.add(i)
            pending.append((i, x))
            for y in sorted(blocks.block_vertices(i)):
                if y not in reached:
                    reached.add(y)
                    queue.append(y)
    return ExtensionFrontier(seed_vertex, seed, tuple(pending))


def _cycle_from(block: FrozenSet[Edge], start: int) -> List[int]:
    adjacent: Dict[int, List[int]] = defaultdict(list)
    for u, v in block:
        adjacent[u].append(v)
        adjacent[v].append(u)
    order = [start]
    previous, current = None, start
    while True:
        nxt = min(w for w in adjacent[current] if w != previous) if previous is not None else min(adjacent[current])
        if nxt == start:
            return order
        order.append(nxt)
        previous, current = current, nxt


def extend_frontier(graph: Graph, analysis: CactusAnalysis, frontier: ExtensionFrontier) -> EdgeColoring:
    """
    Extends the seed coloring over every block in frontier order. A triangle block whose other
    two corners have degree 2 gets its two edges at the third corner in different colors.

    Raises:
        InvariantViolationError: If some block rule has no extension for its entry coloring.
    """
    apart = triangle_pairs(graph, analysis)
    coloring = frontier.colored
    for index, entry in frontier.pending_blocks:
        block = analysis.blocks.blocks[index]
        if len(block) == 1:
            (u, v), = block
            other = v if u == entry else u
            if graph.degree(other) >= 2:
                coloring = extend_double_star(graph, entry, other, coloring, apart.get(other, ()))
        else:
            coloring = extend_hairy_cycle(graph, _cycle_from(block, entry), coloring, apart)
    return coloring


def _seed_colorings(graph: Graph, v: int, k: int) -> Iterator[Dict[Edge, int]]:
    """Colorings of the edges at v in lexicographic order, new colors appearing in increasing order."""
    edges = graph.incident_edges(v)
    for colors in itertools.product(range(1, k + 1), repeat=len(edges)):
        top = 0
        canonical = True
        for c in colors:
            if c > top + 1:
                canonical = False
                break
            top = max(top, c)
        if canonical:
            yield dict(zip(edges, colors))


def _compact(coloring: EdgeColoring) -> EdgeColoring:
    used = sorted(coloring.colors_used())
    relabel = {c: i + 1 for i, c in enumerate(used)}
    return EdgeColoring(max(len(used), 1), {e: relabel[c] for e, c in coloring.assignment.items()})


def color_cycle_graph(graph: Graph) -> DalResult:
    """Applies color_cycle to a graph that is a single cycle, in its own vertex numbering."""
    if graph.vertex_count < 3 or not graph.is_regular(2) or not is_connected(graph):
        raise PreconditionError("cycle", "graph is not a single cycle")
    order = _cycle_from(frozenset(graph.edges), 0)
    result = color_cycle(graph.vertex_count)
    if result.witness is None:
        return DalResult.proven_infinite(InfiniteCertificate(InfiniteKind.ODD_CYCLE, frozenset(graph.vertices)))
    return DalResult.finite(result.k, result.witness.relabeled(dict(enumerate(order))))


def color_cactus(graph: Graph, colors: int = 3, seed_vertex: Optional[int] = None) -> DalResult:
    """
    Colors a cactus with at most `colors` colors by extending a seed coloring block by block.

    A cycle is answered by color_cycle and a single edge is proven infinite. For 2 colors the
    cactus must have no 3-uniform odd cycle and no two adjacent degree-2 vertices.

    Args:
        graph: A cactus.
        colors: 2 or 3.
        seed_vertex: Non-leaf vertex to start from; by default the vertices are tried by
            decreasing degree.

    Returns:
        DalResult: FINITE with the number of colors the witness uses, or PROVEN_INFINITE.

    Raises:
        PreconditionError: Naming the violated hypothesis.
        InvariantViolationError: If no seed coloring could be extended.
    """
    if colors not in (2, 3):
        raise PreconditionError("colors", f"colors must be 2 or 3, got {colors}")
    analysis = analyze_cactus(graph)
    if not analysis.is_cactus:
        raise PreconditionError("cactus", "graph is not a connected cactus")
    if analysis.is_single_edge:
        return DalResult.proven_infinite(InfiniteCertificate(InfiniteKind.SINGLE_EDGE, frozenset(graph.vertices)))
    if analysis.is_single_cycle:
        return color_cycle_graph(graph)
    if graph.edge_count < 2:
        raise PreconditionError("edges>=2", "a cactus needs at least two edges")
    if colors == 2:
        if analysis.has_3_uniform_odd_cycle:
            raise PreconditionError("no-3-uniform-odd-cycle", "2 colors exclude a 3-uniform odd cycle")
        if not analysis.degree2_independent:
            raise PreconditionError("degree-2-independent", "2 colors need the degree-2 vertices independent")
    if is_degree_distinguishing(graph):
        return DalResult.finite(1, EdgeColoring.monochromatic(graph))

    if seed_vertex is not None:
        if not 0 <= seed_vertex < graph.vertex_count or graph.degree(seed_vertex) < 2:
            raise PreconditionError("seed-vertex", f"seed {seed_vertex} must be a non-leaf vertex")
        seeds = [seed_vertex]
    else:
        seeds = sorted((v for v in graph.vertices if graph.degree(v) >= 2), key=lambda v: (-graph.degree(v), v))

    apart = triangle_pairs(graph, analysis)
    candidates = ((v, seed) for v in seeds for seed in _seed_colorings(graph, v, colors))
    attempts = 0
    for v, seed in itertools.islice(candidates, SEED_ATTEMPTS):
        attempts += 1
        start = _keep_apart(graph, EdgeColoring(colors, seed), (v,), set(), apart)
        if start is None:
            logger.debug("seed %s at %d puts one color on a triangle", sorted(seed.values()), v)
            continue
        frontier = plan_extension(graph, analysis, v, start)
        try:
            coloring = extend_frontier(graph, analysis, frontier)
        except InvariantViolationError as e:
            logger.debug("seed %s at %d does not extend: %s", sorted(seed.values()), v, e)
            continue
        report = verify_distinguishing(graph, coloring)
        if not report.proper:
            raise InvariantViolationError(f"block extensions produced violations {report.violations}")
        witness = _compact(coloring)
        logger.info("cactus colored with %d colors from seed vertex %d", witness.color_count, v)
        return DalResult.finite(witness.color_count, witness)
    raise InvariantViolationError(f"no seed coloring extends over the cactus after {attempts} attempts")
