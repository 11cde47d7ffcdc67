"""
graph.py

This module provides the simple undirected graph used everywhere in the toolkit, together with
its plain-text format and conversions to and from networkx.

Vertices are dense integers 0..n-1. Edges are stored normalized as (u, v) with u < v and kept
sorted, so two graphs built from the same edge set compare equal.

Classes:
    Graph: Immutable simple graph with derived adjacency.

Functions:
    normalize_edge: Orders the endpoints of an edge.
    parse_graph / format_graph: Text format ("n m" header, one "u v" line per edge).
    read_graph / write_graph: File helpers around the text format.
    induced_subgraph / edge_subgraph: Relabeled subgraphs with their vertex maps.
    to_networkx / from_networkx: Conversions used by the structural algorithms.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from cbcore.errors import GraphFormatError

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]


def normalize_edge(u: int, v: int) -> Edge:
    """Returns the edge uv with its smaller endpoint first."""
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph over the vertices 0..vertex_count-1.

    Attributes:
        vertex_count (int): Number of vertices, including isolated ones.
        edges (Tuple[Edge, ...]): Sorted normalized edges.

    Raises:
        GraphFormatError: On loops, parallel edges or endpoints out of range.
    """
    vertex_count: int
    edges: Tuple[Edge, ...] = field(default=())

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphFormatError(f"negative vertex count {self.vertex_count}")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphFormatError(f"loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphFormatError(f"edge ({u}, {v}) has an endpoint outside 0..{self.vertex_count - 1}")
            e = normalize_edge(u, v)
            if e in seen:
                raise GraphFormatError(f"parallel edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[int, int]], vertex_count: Optional[int] = None) -> "Graph":
        """
        Builds a graph from an edge list.

        Args:
            edges: Pairs of vertex ids.
            vertex_count: Number of vertices; defaults to one more than the largest endpoint.

        Returns:
            Graph: The validated graph.
        """
        edges = [tuple(e) for e in edges]
        if vertex_count is None:
            vertex_count = 1 + max((max(e) for e in edges), default=-1)
        return cls(vertex_count, tuple(edges))

    @cached_property
    def adjacency(self) -> Tuple[Tuple[int, ...], ...]:
        neighbors: List[List[int]] = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        return tuple(tuple(sorted(n)) for n in neighbors)

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    @cached_property
    def degrees(self) -> Tuple[int, ...]:
        return tuple(len(n) for n in self.adjacency)

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return normalize_edge(u, v) in self.edge_set

    def incident_edges(self, v: int) -> Tuple[Edge, ...]:
        return tuple(normalize_edge(v, w) for w in self.adjacency[v])

    def is_regular(self, d: int) -> bool:
        return all(x == d for x in self.degrees)


def parse_graph(text: str) -> Graph:
    """
    Parses the graph text format.

    The first non-comment line is "n m"; then m lines "u v" with 0-based ids follow.
    Lines starting with '#' and blank lines are skipped.

    Args:
        text: Full file contents.

    Returns:
        Graph: The parsed graph.

    Raises:
        GraphFormatError: With the offending line number.
    """
    header = None
    edges: List[Edge] = []
    seen = set()
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if line.startswith('#') or not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected two integers, got {line!r}", number)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError as e:
            raise GraphFormatError(f"expected two integers, got {line!r}", number) from e
        if header is None:
            if a < 0 or b < 0:
                raise GraphFormatError("negative count in header", number)
            header = (a, b)
            continue
        if a == b:
            raise GraphFormatError(f"loop at vertex {a}", number)
        if not (0 <= a < header[0] and 0 <= b < header[0]):
            raise GraphFormatError(f"vertex id out of range 0..{header[0] - 1}", number)
        e = normalize_edge(a, b)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {e}", number)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise GraphFormatError("missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphFormatError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph(header[0], tuple(edges))


def format_graph(graph: Graph, comment: Optional[str] = None) -> str:
    """Renders a graph in the text format, optionally preceded by a comment line."""
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"{graph.vertex_count} {graph.edge_count}")
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> Graph:
    with open(path, "r") as f:
        return parse_graph(f.read())


def write_graph(graph: Graph, path: str, comment: Optional[str] = None) -> None:
    with open(path, "w") as f:
        f.write(format_graph(graph, comment))


def induced_subgraph(graph: Graph, vertices: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """
    Builds the subgraph induced by a vertex set, relabeled to 0..len-1 in increasing order.

    Returns:
        Tuple[Graph, Dict[int, int]]: The subgraph and the map old id -> new id.
    """
    keep = sorted(set(vertices))
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in graph.edges if u in index and v in index]
    return Graph(len(keep), tuple(edges)), index


def edge_subgraph(edges: Iterable[Edge]) -> Tuple[Graph, Dict[int, int]]:
    """Builds the graph spanned by an edge set (no isolated vertices), relabeled in increasing order."""
    edges = list(edges)
    keep = sorted({x for e in edges for x in e})
    index = {v: i for i, v in enumerate(keep)}
    return Graph(len(keep), tuple((index[u], index[v]) for u, v in edges)), index


def to_networkx(graph: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(graph.vertices)
    g.add_edges_from(graph.edges)
    return g


def from_networkx(g: nx.Graph, order: Optional[Sequence[Hashable]] = None) -> Tuple[Graph, Dict[Hashable, int]]:
    """
    Converts a networkx graph, numbering nodes in the given order (sorted order by default).

    Returns:
        Tuple[Graph, Dict[Hashable, int]]: The graph and the map node -> vertex id.
    """
    if order is None:
        try:
            order = sorted(g.nodes)
        except TypeError:
            order = list(g.nodes)
    index = {node: i for i, node in enumerate(order)}
    return Graph(len(index), tuple((index[u], index[v]) for u, v in g.edges)), index
