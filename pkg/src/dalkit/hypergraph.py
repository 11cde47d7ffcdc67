"""
hypergraph.py

This module provides the bridge between regular bipartite graphs and uniform hypergraphs.

A hypergraph H has a vertex-edge incidence graph: a bipartite graph joining each vertex of H to the
edges containing it. Conversely, a bipartite graph G with sides X and Y has derived hypergraphs
H_X (vertices X, edges N(y) for y in Y) and H_Y. If H is k-uniform and has a 2-coloring with no
monochromatic edge, coloring every incidence ve with the color of v is distinguishing: the vertex
side gets one part, the edge side two. For connected 3-regular bipartite graphs this is also
necessary, so dal(G) <= 2 iff H_X or H_Y is 2-colorable.

Classes:
    Hypergraph: Vertex count and a list of distinct edges.
    TwoColoring: Vertex -> color in {1, 2}.
    Dal2Characterization: Outcome of the dal <= 2 test for a 3-regular bipartite graph.

Functions:
    incidence_graph: Vertex-edge incidence graph and its two sides.
    bipartition: Sides of a bipartite graph.
    derived_hypergraphs: H_X and H_Y of a regular bipartite graph.
    two_color: Proper 2-coloring by backtracking, or None.
    dal2_from_hypergraph_coloring: Distinguishing 2-coloring of the incidence graph.
    characterize_dal2_bipartite: Decides dal <= 2 for a connected 3-regular bipartite graph.
    fano_plane, random_regular_uniform_hypergraph: Sample hypergraphs.
"""
import logging
import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from cbcore.coloring import EdgeColoring, verify_distinguishing
from cbcore.errors import GraphFormatError, InvariantViolationError, PreconditionError
from cbcore.graph import Edge, Graph, normalize_edge, to_networkx
from cbcore.structure import is_connected
from dalkit.generators import random_regular_bipartite

logger = logging.getLogger(__name__)

Sides = Tuple[Tuple[int, ...], Tuple[int, ...]]


@dataclass(frozen=True)
class Hypergraph:
    """
    A hypergraph on vertices 0..vertex_count-1.

    Attributes:
        vertex_count (int): Number of vertices.
        edges (Tuple[Tuple[int, ...], ...]): Edges as sorted vertex tuples, in input order.

    Raises:
        GraphFormatError: For an empty edge, a repeated vertex inside an edge, a vertex out of
            range or a duplicate edge.
    """
    vertex_count: int
    edges: Tuple[Tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphFormatError(f"vertex count must be nonnegative, got {self.vertex_count}")
        normalized = []
        seen = set()
        for raw in self.edges:
            edge = tuple(sorted(raw))
            if not edge:
                raise GraphFormatError("empty hyperedge")
            if len(set(edge)) != len(edge):
                raise GraphFormatError(f"hyperedge {edge} repeats a vertex")
            if edge[0] < 0 or edge[-1] >= self.vertex_count:
                raise GraphFormatError(f"hyperedge {edge} leaves 0..{self.vertex_count - 1}")
            if edge in seen:
                raise GraphFormatError(f"duplicate hyperedge {edge}")
            seen.add(edge)
            normalized.append(edge)
        object.__setattr__(self, "edges", tuple(normalized))

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[Iterable[int]], collapse: bool = False) -> "Hypergraph":
        """Builds a hypergraph; with collapse=True repeated edges are kept once."""
        if not collapse:
            return cls(vertex_count, tuple(tuple(e) for e in edges))
        unique: Dict[Tuple[int, ...], None] = {}
        for e in edges:
            unique.setdefault(tuple(sorted(e)), None)
        return cls(vertex_count, tuple(unique))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def uniformity(self) -> Optional[int]:
        """The common edge size, or None if edge sizes differ or there are no edges."""
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    def is_uniform(self, k: int) -> bool:
        return all(len(e) == k for e in self.edges)

    def is_regular(self, k: int) -> bool:
        return all(self.degree(v) == k for v in range(self.vertex_count))

    def edges_at(self, v: int) -> List[Tuple[int, ...]]:
        return [e for e in self.edges if v in e]


@dataclass(frozen=True)
class TwoColoring:
    """
    Colors in {1, 2} for every vertex of a hypergraph.

    Attributes:
        colors (Tuple[int, ...]): colors[v] is the color of v.
    """
    colors: Tuple[int, ...]

    def __post_init__(self):
        bad = [c for c in self.colors if c not in (1, 2)]
        if bad:
            raise PreconditionError("colors-1-2", f"hypergraph colors must be 1 or 2, got {bad[0]}")

    def monochromatic_edges(self, hypergraph: Hypergraph) -> List[Tuple[int, ...]]:
        if len(self.colors) != hypergraph.vertex_count:
            raise PreconditionError("total", f"expected {hypergraph.vertex_count} colors, got {len(self.colors)}")
        return [e for e in hypergraph.edges if len({self.colors[v] for v in e}) == 1]

    def is_proper(self, hypergraph: Hypergraph) -> bool:
        return not self.monochromatic_edges(hypergraph)


def incidence_graph(hypergraph: Hypergraph) -> Tuple[Graph, Sides]:
    """
    Builds the vertex-edge incidence graph. Hypergraph vertex v keeps id v and edge i becomes
    vertex n + i.

    Returns:
        Tuple[Graph, Sides]: The graph and its (vertex side, edge side).
    """
    n = hypergraph.vertex_count
    edges = [(v, n + i) for i, e in enumerate(hypergraph.edges) for v in e]
    graph = Graph.from_edges(edges, n + hypergraph.edge_count)
    return graph, (tuple(range(n)), tuple(range(n, n + hypergraph.edge_count)))


def bipartition(graph: Graph) -> Sides:
    """
    Splits a bipartite graph into two sides. The first vertex of every component that has edges
    goes to the first side; isolated vertices go to the second.

    Raises:
        PreconditionError: If the graph is not bipartite.
    """
    g = to_networkx(graph)
    try:
        color = nx.bipartite.color(g)
    except nx.NetworkXError as e:
        raise PreconditionError("bipartite", "graph has an odd cycle") from e
    first = tuple(v for v in graph.vertices if color[v] == 1)
    second = tuple(v for v in graph.vertices if color[v] == 0)
    return first, second


def _check_sides(graph: Graph, sides: Sides) -> None:
    x, y = set(sides[0]), set(sides[1])
    if x & y or x | y != set(graph.vertices):
        raise PreconditionError("bipartition", "sides must split the vertex set")
    for u, v in graph.edges:
        if (u in x) == (v in x):
            raise PreconditionError("bipartite", f"edge ({u}, {v}) lies inside one side")


def derived_hypergraphs(graph: Graph, sides: Optional[Sides] = None) -> Tuple[Hypergraph, Hypergraph]:
    """
    Builds H_X and H_Y of a regular bipartite graph. The vertices of H_X are the vertices of X in
    increasing order, renumbered from 0, and its edges are N(y) for y in Y in increasing order
    (likewise for H_Y).

    Repeated neighborhoods (as in C_4 or K_{3,3}) are kept once. A repeated edge never changes
    whether a hypergraph is 2-colorable, but it does break regularity and the isomorphism between
    G and incidence_graph(H_X).

    Raises:
        PreconditionError: If G is not bipartite with the given sides, or not regular.
    """
    sides = bipartition(graph) if sides is None else (tuple(sorted(sides[0])), tuple(sorted(sides[1])))
    _check_sides(graph, sides)
    if graph.vertex_count and not graph.is_regular(graph.degree(0)):
        raise PreconditionError("regular", "graph must be regular")
    result = []
    for this, other in (sides, sides[::-1]):
        index = {v: i for i, v in enumerate(this)}
        neighborhoods = [[index[u] for u in graph.neighbors(y)] for y in other]
        h = Hypergraph.from_edges(len(this), neighborhoods, collapse=True)
        if h.edge_count < len(neighborhoods):
            logger.debug("collapsed %d repeated neighborhoods", len(neighborhoods) - h.edge_count)
        result.append(h)
    return result[0], result[1]


def two_color(hypergraph: Hypergraph) -> Optional[TwoColoring]:
    """
    Searches for a 2-coloring without monochromatic edges.

    Vertices are colored in order of decreasing degree; the first gets color 1, since swapping the
    colors of a proper coloring keeps it proper. An edge is checked once all its vertices are colored.

    Returns:
        Optional[TwoColoring]: The first proper coloring found, or None.
    """
    n = hypergraph.vertex_count
    if any(len(e) == 1 for e in hypergraph.edges):
        return None
    order = sorted(range(n), key=lambda v: (-hypergraph.degree(v), v))
    position = {v: i for i, v in enumerate(order)}
    # each edge is checked at its last vertex in the order
    closing: Dict[int, List[Tuple[int, ...]]] = {v: [] for v in order}
    for e in hypergraph.edges:
        closing[max(e, key=position.__getitem__)].append(e)
    colors = [0] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for c in ((1,) if i == 0 else (1, 2)):
            colors[v] = c
            if all(len({colors[u] for u in e}) == 2 for e in closing[v]) and extend(i + 1):
                return True
        colors[v] = 0
        return False

    if not extend(0):
        logger.debug("hypergraph with %d vertices and %d edges is not 2-colorable", n, hypergraph.edge_count)
        return None
    return TwoColoring(tuple(colors))


def dal2_from_hypergraph_coloring(hypergraph: Hypergraph, coloring: TwoColoring) -> EdgeColoring:
    """
    Colors each edge ve of the incidence graph with the color of v.

    Returns:
        EdgeColoring: A distinguishing 2-coloring of incidence_graph(hypergraph)[0].

    Raises:
        PreconditionError: If the hypergraph is not uniform or the coloring has a monochromatic edge.
    """
    if hypergraph.edge_count and hypergraph.uniformity() is None:
        raise PreconditionError("uniform", "hypergraph must be uniform")
    bad = coloring.monochromatic_edges(hypergraph)
    if bad:
        raise PreconditionError("proper-2-coloring", f"edge {bad[0]} is monochromatic")
    graph, _ = incidence_graph(hypergraph)
    n = hypergraph.vertex_count
    result = EdgeColoring(2, {normalize_edge(v, n + i): coloring.colors[v]
                              for i, e in enumerate(hypergraph.edges) for v in e})
    report = verify_distinguishing(graph, result)
    if not report.proper:
        raise InvariantViolationError(f"incidence coloring is not distinguishing at {report.violations[0][0]}")
    return result


@dataclass(frozen=True)
class Dal2Characterization:
    """
    Attributes:
        holds (bool): dal(G) <= 2.
        witness (Optional[EdgeColoring]): A distinguishing 2-coloring of G when holds.
        side (Optional[str]): "X" or "Y", the side whose derived hypergraph was 2-colored.
        hypergraph_coloring (Optional[TwoColoring]): That 2-coloring.
    """
    holds: bool
    witness: Optional[EdgeColoring] = None
    side: Optional[str] = None
    hypergraph_coloring: Optional[TwoColoring] = None


def _lift(graph: Graph, side: Sequence[int], coloring: TwoColoring) -> EdgeColoring:
    index = {v: i for i, v in enumerate(side)}
    assignment: Dict[Edge, int] = {}
    for u, v in graph.edges:
        x = u if u in index else v
        assignment[(u, v)] = coloring.colors[index[x]]
    return EdgeColoring(2, assignment)


def characterize_dal2_bipartite(graph: Graph, sides: Optional[Sides] = None) -> Dal2Characterization:
    """
    Decides dal(G) <= 2 for a connected 3-regular bipartite graph: it holds iff H_X or H_Y is
    2-colorable. The witness colors each edge xy with the color of its endpoint on the colored side.

    Raises:
        PreconditionError: If G is not connected, not 3-regular or not bipartite.
    """
    if not is_connected(graph):
        raise PreconditionError("connected", "graph must be connected")
    if not graph.is_regular(3):
        raise PreconditionError("3-regular", "graph must be 3-regular")
    sides = bipartition(graph) if sides is None else (tuple(sorted(sides[0])), tuple(sorted(sides[1])))
    h_x, h_y = derived_hypergraphs(graph, sides)
    for name, side, h in (("X", sides[0], h_x), ("Y", sides[1], h_y)):
        coloring = two_color(h)
        if coloring is None:
            continue
        witness = _lift(graph, side, coloring)
        report = verify_distinguishing(graph, witness)
        if not report.proper:
            raise InvariantViolationError(f"lifted coloring is not distinguishing at {report.violations[0][0]}")
        logger.info("dal <= 2: H_%s is 2-colorable", name)
        return Dal2Characterization(True, witness, name, coloring)
    logger.info("dal > 2: neither derived hypergraph is 2-colorable")
    return Dal2Characterization(False)


FANO_LINES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))


def fano_plane() -> Hypergraph:
    return Hypergraph(7, FANO_LINES)


def random_regular_uniform_hypergraph(k: int, n: int, seed: Optional[int] = None) -> Hypergraph:
    """
    Random k-regular k-uniform hypergraph on n vertices: H_X of a random k-regular bipartite graph,
    resampled until no two neighborhoods coincide.
    """
    if not 1 <= k < n:
        raise PreconditionError("1<=k<n", f"need 1 <= k < n, got k={k}, n={n}")
    rng = random.Random(seed)
    while True:
        graph = random_regular_bipartite(k, n, seed=rng.randrange(2 ** 31))
        h_x, _ = derived_hypergraphs(graph, (tuple(range(n)), tuple(range(n, 2 * n))))
        if h_x.edge_count == n:
            return h_x
