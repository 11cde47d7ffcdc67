"""
cubic.py

This module provides the constructive 3-coloring of connected {1,3}-regular graphs in which every
3-vertex lies in a triangle and every 1-vertex hangs off a 3-vertex.

The colorer works recursively on n + e:

1. a cut-edge between two 3-vertices splits the graph in two parts that share the edge; the part
   holding a prescribed constraint is colored first, the other part is colored so that its endpoint
   avoids the partition of the first endpoint, and colors of the second part are permuted to agree
   on the cut-edge;
2. otherwise one of the reductions (2-triangle, 1-diamond, 2-diamonds) is located, the reduced
   graph is colored under the configuration's side conditions and the potential pair it induces is
   extended over the edges at D;
3. otherwise the graph is one of the named base families, or a sparse residue in which every
   3-vertex lies in exactly one triangle; both are colored by exact search. Anything else is an
   error.

Constraints are "vertex v must not take partition p"; the recursion passes them to the part of the
graph where v lives. A constraint always sits on a 3-vertex next to a leaf. Every returned coloring
passes the verifier.

Classes:
    CubicValidation: Flags for the input hypotheses.
    CubicOutcome: A coloring or an odd-cycle-of-diamonds certificate.
    SplitRecipe: How to merge colorings of the two sides of a cut-edge.
"""
import logging
from dataclasses import dataclass
from enum import IntFlag
from typing import Dict, FrozenSet, Mapping, Optional, Tuple

import networkx as nx

from cbcore.coloring import EdgeColoring, Partition, color_blind_partition, verify_distinguishing
from cbcore.errors import InvariantViolationError, PreconditionError
from cbcore.graph import Edge, Graph, induced_subgraph, normalize_edge, to_networkx
from cbcore.solver import enumerate_extensions
from cbcore.structure import InfiniteCertificate, InfiniteKind, classify_infinite, cut_edges, is_connected, \
    is_cycle_of_diamonds, triangles
from dalkit.generators import BASE_CASE_FAMILIES, base_case_graph
from dalkit.reducibility import (Configuration, apply_reduction, extend_pair, iter_embeddings, pair_from_coloring,
                                 reductions)

logger = logging.getLogger(__name__)

Forbidden = Mapping[int, FrozenSet[Partition]]

# Largest graph searched exactly when the constraints of a reduced graph clash.
EXACT_EDGE_LIMIT = 30
# Largest sparse residue searched exactly.
RESIDUE_EDGE_LIMIT = 60


class CubicValidation(IntFlag):
    """
    Hypotheses of the cubic colorer; validate_cubic_input returns the flags that hold.
    """
    NONE = 0x0
    CONNECTED = 0x1
    DEGREES_1_3 = 0x2
    LEAVES_ATTACHED = 0x4
    TRIANGLES = 0x8
    ALL = 0xF


def validate_cubic_input(graph: Graph) -> CubicValidation:
    flags = CubicValidation.NONE
    if is_connected(graph):
        flags |= CubicValidation.CONNECTED
    if all(d in (1, 3) for d in graph.degrees):
        flags |= CubicValidation.DEGREES_1_3
    if all(graph.degree(graph.neighbors(v)[0]) == 3 for v in graph.vertices if graph.degree(v) == 1):
        flags |= CubicValidation.LEAVES_ATTACHED
    in_triangle = {x for t in triangles(graph) for x in t}
    if all(v in in_triangle for v in graph.vertices if graph.degree(v) == 3):
        flags |= CubicValidation.TRIANGLES
    return flags


def _require_valid(graph: Graph) -> None:
    flags = validate_cubic_input(graph)
    for flag in (CubicValidation.CONNECTED, CubicValidation.DEGREES_1_3, CubicValidation.LEAVES_ATTACHED,
                 CubicValidation.TRIANGLES):
        if not flags & flag:
            raise PreconditionError(flag.name.lower(), f"cubic colorer hypothesis fails: {flag.name}")


@dataclass(frozen=True)
class CubicOutcome:
    """
    Exactly one of coloring and certificate is set.

    Attributes:
        coloring (Optional[EdgeColoring]): Verified distinguishing coloring with at most 3 colors.
        certificate (Optional[InfiniteCertificate]): The graph is an odd cycle of diamonds.
    """
    coloring: Optional[EdgeColoring] = None
    certificate: Optional[InfiniteCertificate] = None


@dataclass(frozen=True)
class SplitRecipe:
    """
    Merge data for a split on the cut-edge uv.

    Attributes:
        edge (Edge): The cut-edge (u, v) with u on the first side.
        first_map (Dict[int, int]): Graph vertex -> vertex of the first part (u's side plus v).
        second_map (Dict[int, int]): Graph vertex -> vertex of the second part (v's side plus u).
    """
    edge: Edge
    first_map: Dict[int, int]
    second_map: Dict[int, int]

    def merge(self, graph: Graph, first: EdgeColoring, second: EdgeColoring) -> EdgeColoring:
        """
        Combines colorings of the two parts after mapping the second part's cut-edge color onto the
        first part's.

        Raises:
            InvariantViolationError: If the endpoint partitions of the cut-edge are equal.
        """
        u, v = self.edge
        first_inv = {i: x for x, i in self.first_map.items()}
        second_inv = {i: x for x, i in self.second_map.items()}
        g1, g2 = _part_graph(graph, self.first_map), _part_graph(graph, self.second_map)
        if color_blind_partition(g1, first, self.first_map[u]) == color_blind_partition(g2, second, self.second_map[v]):
            raise InvariantViolationError(f"cut-edge {self.edge} endpoints share a partition")
        a = first.color_of(self.first_map[u], self.first_map[v])
        b = second.color_of(self.second_map[u], self.second_map[v])
        swapped = second.permuted({a: b, b: a}) if a != b else second
        merged = dict(first.relabeled(first_inv).assignment)
        merged.update(swapped.relabeled(second_inv).assignment)
        return EdgeColoring(max(first.color_count, second.color_count), merged)


def _part_graph(graph: Graph, vertex_map: Dict[int, int]) -> Graph:
    sub, _ = induced_subgraph(graph, vertex_map)
    return sub


def split_on_cut_edge(graph: Graph, uv: Edge) -> Tuple[Graph, Graph, SplitRecipe]:
    """
    Splits G on a cut-edge uv with d(u) = d(v) = 3 into G_1 + uv and G_2 + uv.

    Returns:
        Tuple[Graph, Graph, SplitRecipe]: The part holding u, the part holding v, and the merge data.

    Raises:
        PreconditionError: If uv is not a cut-edge between two 3-vertices.
    """
    u, v = uv
    if not graph.has_edge(u, v):
        raise PreconditionError("edge", f"{uv} is not an edge")
    if graph.degree(u) != 3 or graph.degree(v) != 3:
        raise PreconditionError("degree-3", f"cut-edge endpoints must have degree 3, got {uv}")
    g = to_networkx(graph)
    g.remove_edge(u, v)
    side_u = nx.node_connected_component(g, u)
    if v in side_u:
        raise PreconditionError("cut-edge", f"{uv} is not a cut-edge")
    side_v = nx.node_connected_component(g, v)
    first, first_map = induced_subgraph(graph, side_u | {v})
    second, second_map = induced_subgraph(graph, side_v | {u})
    return first, second, SplitRecipe((u, v), first_map, second_map)


def base_case_family(graph: Graph) -> Optional[str]:
    """Name of the base family the graph is isomorphic to, if any."""
    g = to_networkx(graph)
    for name in BASE_CASE_FAMILIES:
        if nx.is_isomorphic(g, to_networkx(base_case_graph(name))):
            return name
    return None


def is_sparse_residue(graph: Graph) -> bool:
    """True iff every 3-vertex lies in exactly one triangle, so no diamond is left."""
    count = [0] * graph.vertex_count
    for t in triangles(graph):
        for x in t:
            count[x] += 1
    return all(count[v] == 1 for v in graph.vertices if graph.degree(v) == 3)


def _reduced_is_usable(reduced: Graph) -> bool:
    if not is_connected(reduced) or any(d not in (1, 3) for d in reduced.degrees):
        return False
    return classify_infinite(reduced) is None


def _move(forbidden: Forbidden, vertex_map: Mapping[int, int]) -> Dict[int, FrozenSet[Partition]]:
    return {vertex_map[x]: ps for x, ps in forbidden.items() if x in vertex_map}


def _respects(graph: Graph, coloring: EdgeColoring, forbidden: Forbidden) -> bool:
    return all(color_blind_partition(graph, coloring, x) not in ps for x, ps in forbidden.items())


def _split(graph: Graph, uv: Edge, forbidden: Forbidden) -> Optional[EdgeColoring]:
    u, v = uv
    first, second, recipe = split_on_cut_edge(graph, uv)
    side_u = {x for x in recipe.first_map if x != v}
    if any(x not in side_u for x in forbidden):
        # Color the side holding the constraint first.
        first, second = second, first
        u, v = v, u
        recipe = SplitRecipe((u, v), recipe.second_map, recipe.first_map)
        side_u = {x for x in recipe.first_map if x != v}
    own = {x: ps for x, ps in forbidden.items() if x in side_u}
    rest = {x: ps for x, ps in forbidden.items() if x not in side_u}
    c1 = _color(first, _move(own, recipe.first_map))
    if c1 is None:
        return None
    p = color_blind_partition(first, c1, recipe.first_map[u])
    second_forbidden = _move(rest, recipe.second_map)
    second_forbidden[recipe.second_map[v]] = second_forbidden.get(recipe.second_map[v], frozenset()) | {p}
    c2 = _color(second, second_forbidden)
    if c2 is None:
        return None
    logger.debug("merged split on cut-edge %s", uv)
    return recipe.merge(graph, c1, c2)


def lift_reduction(graph: Graph, config: Configuration, embedding: Mapping[int, int], reduced: Graph,
                   vertex_map: Mapping[int, int], coloring: EdgeColoring,
                   forbidden: Optional[Forbidden] = None) -> EdgeColoring:
    """
    Lifts a coloring of G - D + M back to G.

    The potential pair the coloring induces on the configuration is extended over the edges at D by
    the reducibility search; every other edge keeps its color.

    Args:
        graph: G.
        config: A configuration whose every potential pair extends.
        embedding: H-vertex -> vertex of G.
        reduced: G - D + M, as built by apply_reduction.
        vertex_map: Vertex of G -> vertex of the reduced graph.
        coloring: Distinguishing 3-coloring of the reduced graph that honors the side conditions.
        forbidden: Constraints of G the lifted coloring must honor.

    Raises:
        InvariantViolationError: If the induced pair has no extension or the lifted coloring is not
            distinguishing.
    """
    pair = pair_from_coloring(config, embedding, vertex_map, reduced, coloring)
    local = extend_pair(config, pair)
    if local is None:
        raise InvariantViolationError(f"{config.name}: potential pair {pair.describe(config)} does not extend")
    interior = {embedding[x] for x in config.interior}
    inverse = {i: x for x, i in vertex_map.items()}
    assignment = {}
    for (a, b), c in coloring.assignment.items():
        e = normalize_edge(inverse[a], inverse[b])
        if graph.has_edge(*e) and e[0] not in interior and e[1] not in interior:
            assignment[e] = c
    for (a, b), c in local.assignment.items():
        assignment[normalize_edge(embedding[a], embedding[b])] = c
    lifted = EdgeColoring(3, assignment)
    if not lifted.is_total(graph) or not verify_distinguishing(graph, lifted).proper \
            or not _respects(graph, lifted, forbidden or {}):
        raise InvariantViolationError(
            f"{config.name}: lifted coloring of {pair.describe(config)} is not distinguishing")
    return lifted


def _reduce(graph: Graph, config: Configuration, embedding: Dict[int, int], reduced: Graph,
            vertex_map: Dict[int, int], forbidden: Forbidden) -> Optional[EdgeColoring]:
    interior = {embedding[x] for x in config.interior}
    child = {vertex_map[x]: ps for x, ps in forbidden.items()
             if x not in interior and x in vertex_map and reduced.degree(vertex_map[x]) == graph.degree(x)}
    for x, ps in config.avoided().items():
        y = vertex_map[embedding[x]]
        child[y] = child.get(y, frozenset()) | ps
    sub = _color(reduced, child)
    if sub is None:
        return None
    return lift_reduction(graph, config, embedding, reduced, vertex_map, sub, forbidden)


def _exact(graph: Graph, forbidden: Forbidden) -> Optional[EdgeColoring]:
    return next(enumerate_extensions(graph, EdgeColoring(3), graph.vertices, k=3, forbidden=forbidden), None)


def _base_case(graph: Graph, forbidden: Forbidden) -> Optional[EdgeColoring]:
    family = base_case_family(graph)
    if family is not None:
        logger.debug("base case %s", family)
    elif is_sparse_residue(graph):
        if graph.edge_count > RESIDUE_EDGE_LIMIT:
            raise InvariantViolationError(f"sparse residue with {graph.edge_count} edges is too large to search")
        logger.warning("sparse residue with %d edges, exact search", graph.edge_count)
    else:
        raise InvariantViolationError(
            f"no cut-edge, no reduction and no base family in a graph with {graph.edge_count} edges")
    return _exact(graph, forbidden)


def _first_reduction(graph: Graph) -> Optional[Tuple[Configuration, Dict[int, int], Graph, Dict[int, int]]]:
    for config in reductions():
        for embedding in iter_embeddings(graph, config):
            reduced, vertex_map = apply_reduction(graph, embedding, config)
            if _reduced_is_usable(reduced):
                return config, embedding, reduced, vertex_map
    return None


def _color(graph: Graph, forbidden: Forbidden) -> Optional[EdgeColoring]:
    """Distinguishing 3-coloring respecting the constraints, or None if there is none."""
    if classify_infinite(graph) is not None:
        return None
    for uv in cut_edges(graph):
        if graph.degree(uv[0]) == 3 and graph.degree(uv[1]) == 3:
            return _split(graph, uv, forbidden)
    found = _first_reduction(graph)
    if found is None:
        return _base_case(graph, forbidden)
    config, embedding, reduced, vertex_map = found
    result = _reduce(graph, config, embedding, reduced, vertex_map, forbidden)
    if result is not None:
        logger.debug("%s reduction lifted on %d vertices", config.name, graph.vertex_count)
        return result
    # The constraints of the reduced graph clash; settle this graph directly.
    if graph.edge_count > EXACT_EDGE_LIMIT:
        return None
    logger.warning("%s reduction of a %d-edge graph clashes with %d constraints, exact search",
                   config.name, graph.edge_count, len(forbidden) + len(config.avoid))
    return _exact(graph, forbidden)


def _gate(graph: Graph, coloring: Optional[EdgeColoring]) -> EdgeColoring:
    if coloring is None or not coloring.is_total(graph) or not verify_distinguishing(graph, coloring).proper:
        raise InvariantViolationError("cubic colorer failed to produce a distinguishing 3-coloring")
    return coloring


def color_cubic(graph: Graph) -> CubicOutcome:
    """
    Colors a valid input with at most 3 colors, or certifies it is an odd cycle of diamonds.

    Raises:
        PreconditionError: Naming the first failed hypothesis.
        InvariantViolationError: If no coloring could be built (never expected).
    """
    _require_valid(graph)
    t = is_cycle_of_diamonds(graph)
    if t is not None and t % 2 == 1:
        logger.info("odd cycle of %d diamonds", t)
        return CubicOutcome(certificate=InfiniteCertificate(
            InfiniteKind.ODD_CYCLE_OF_DIAMONDS, frozenset(graph.vertices), t))
    return CubicOutcome(coloring=_gate(graph, _color(graph, {})))


def two_witnesses_at(graph: Graph, v: int) -> Tuple[EdgeColoring, EdgeColoring]:
    """
    Two distinguishing 3-colorings whose partitions at v differ.

    Args:
        graph: A valid input that is not an odd cycle of diamonds.
        v: A 3-vertex adjacent to a 1-vertex.

    Raises:
        PreconditionError: If v is not such a vertex or the input is invalid.
    """
    _require_valid(graph)
    if not 0 <= v < graph.vertex_count or graph.degree(v) != 3 \
            or not any(graph.degree(w) == 1 for w in graph.neighbors(v)):
        raise PreconditionError("leaf-neighbor", f"vertex {v} is not a 3-vertex adjacent to a 1-vertex")
    first = _gate(graph, _color(graph, {}))
    p = color_blind_partition(graph, first, v)
    second = _gate(graph, _color(graph, {v: frozenset({p})}))
    return first, second
