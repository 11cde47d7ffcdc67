"""
coloring.py

This module provides edge colorings, the color-blind partition c*(v) and the verifier that every
algorithm in the toolkit is gated by.

A partition is the tuple of per-color counts at a vertex, sorted nonincreasing with zeros
removed, so two partitions are equal exactly when the tuples are equal.

Classes:
    EdgeColoring: Immutable, possibly partial, assignment of colors 1..k to edges.
    VerificationReport: Outcome of a distinguishing check.

Functions:
    canonical_partition: Normalizes raw per-color counts.
    color_blind_partition: c*(v) for one vertex.
    verify_distinguishing: Checks c* is a proper vertex coloring of the whole graph.
    verify_among: Same check restricted to a vertex scope.
"""
import logging
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from cbcore.errors import IncompleteColoringError, PreconditionError
from cbcore.graph import Edge, Graph, normalize_edge

logger = logging.getLogger(__name__)

Partition = Tuple[int, ...]

# The three partitions a degree-3 vertex can take.
CUBIC_PARTITIONS: Tuple[Partition, ...] = ((3,), (2, 1), (1, 1, 1))


def canonical_partition(counts: Iterable[int]) -> Partition:
    """Sorts counts nonincreasing and drops zeros."""
    return tuple(sorted((c for c in counts if c > 0), reverse=True))


def format_partition(p: Partition) -> str:
    return "(" + ",".join(str(x) for x in p) + ")"


@dataclass(frozen=True)
class EdgeColoring:
    """
    Assignment of colors 1..color_count to some edges of a graph.

    Attributes:
        color_count (int): Number of available colors k.
        assignment (Mapping[Edge, int]): Normalized edge -> color.

    Raises:
        PreconditionError: If k < 1 or a color lies outside 1..k.
    """
    color_count: int
    assignment: Mapping[Edge, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.color_count < 1:
            raise PreconditionError("k>=1", f"color count must be at least 1, got {self.color_count}")
        normalized = {}
        for (u, v), c in self.assignment.items():
            if not 1 <= c <= self.color_count:
                raise PreconditionError("color-range", f"color {c} on edge ({u}, {v}) outside 1..{self.color_count}")
            normalized[normalize_edge(u, v)] = c
        object.__setattr__(self, "assignment", MappingProxyType(normalized))

    def __hash__(self):
        return hash((self.color_count, frozenset(self.assignment.items())))

    @classmethod
    def from_sequence(cls, graph: Graph, colors: Sequence[int], color_count: Optional[int] = None) -> "EdgeColoring":
        """Builds a total coloring from colors listed in graph.edges order."""
        if len(colors) != graph.edge_count:
            raise PreconditionError("total", f"expected {graph.edge_count} colors, got {len(colors)}")
        k = color_count if color_count is not None else max(colors, default=1)
        return cls(k, dict(zip(graph.edges, colors)))

    @classmethod
    def monochromatic(cls, graph: Graph, color: int = 1, color_count: int = 1) -> "EdgeColoring":
        return cls(max(color, color_count), {e: color for e in graph.edges})

    def __len__(self) -> int:
        return len(self.assignment)

    def color_of(self, u: int, v: int) -> Optional[int]:
        return self.assignment.get(normalize_edge(u, v))

    def is_total(self, graph: Graph) -> bool:
        return len(self.assignment) == graph.edge_count and all(e in self.assignment for e in graph.edges)

    def colors_used(self) -> Set[int]:
        return set(self.assignment.values())

    def with_colors(self, updates: Mapping[Edge, int], color_count: Optional[int] = None) -> "EdgeColoring":
        merged = dict(self.assignment)
        merged.update({normalize_edge(*e): c for e, c in updates.items()})
        return EdgeColoring(color_count or self.color_count, merged)

    def with_color_count(self, color_count: int) -> "EdgeColoring":
        return EdgeColoring(color_count, dict(self.assignment))

    def permuted(self, permutation: Mapping[int, int]) -> "EdgeColoring":
        """Applies a color permutation; colors missing from the map are kept."""
        k = max([self.color_count] + list(permutation.values()))
        return EdgeColoring(k, {e: permutation.get(c, c) for e, c in self.assignment.items()})

    def restricted(self, edges: Iterable[Edge]) -> "EdgeColoring":
        keep = {normalize_edge(*e) for e in edges}
        return EdgeColoring(self.color_count, {e: c for e, c in self.assignment.items() if e in keep})

    def relabeled(self, vertex_map: Mapping[int, int]) -> "EdgeColoring":
        """Moves the coloring along a vertex map; edges with an unmapped endpoint are dropped."""
        moved = {}
        for (u, v), c in self.assignment.items():
            if u in vertex_map and v in vertex_map:
                moved[normalize_edge(vertex_map[u], vertex_map[v])] = c
        return EdgeColoring(self.color_count, moved)

    def as_sequence(self, graph: Graph) -> Tuple[Optional[int], ...]:
        return tuple(self.assignment.get(e) for e in graph.edges)


def color_counts(graph: Graph, coloring: EdgeColoring, v: int) -> List[int]:
    """
    Returns c-bar(v): the number of edges of each color 1..k at v.

    Raises:
        IncompleteColoringError: If an edge at v is uncolored.
    """
    counts = [0] * coloring.color_count
    for e in graph.incident_edges(v):
        c = coloring.assignment.get(e)
        if c is None:
            raise IncompleteColoringError(e)
        counts[c - 1] += 1
    return counts


def color_blind_partition(graph: Graph, coloring: EdgeColoring, v: int) -> Partition:
    """
    Computes the color-blind partition c*(v).

    Args:
        graph: The graph.
        coloring: A coloring covering every edge at v.
        v: The vertex.

    Returns:
        Partition: Per-color counts at v, nonincreasing, zeros removed.

    Raises:
        IncompleteColoringError: Naming the first uncolored incident edge.
    """
    return canonical_partition(color_counts(graph, coloring, v))


def partitions(graph: Graph, coloring: EdgeColoring, vertices: Optional[Iterable[int]] = None) -> Dict[int, Partition]:
    if vertices is None:
        vertices = graph.vertices
    return {v: color_blind_partition(graph, coloring, v) for v in vertices}


@dataclass(frozen=True)
class VerificationReport:
    """
    Result of a distinguishing check.

    Attributes:
        proper (bool): True iff no violation was found.
        violations (Tuple): (edge, partition at u, partition at v) for every offending edge.
        partitions (Mapping[int, Partition]): The partitions that were compared.
    """
    proper: bool
    violations: Tuple[Tuple[Edge, Partition, Partition], ...]
    partitions: Mapping[int, Partition]


def _report(graph: Graph, parts: Dict[int, Partition], edges: Iterable[Edge]) -> VerificationReport:
    violations = tuple((e, parts[e[0]], parts[e[1]]) for e in edges if parts[e[0]] == parts[e[1]])
    return VerificationReport(not violations, violations, MappingProxyType(parts))


def verify_distinguishing(graph: Graph, coloring: EdgeColoring) -> VerificationReport:
    """
    Checks that c* is a proper vertex coloring, that is c*(u) != c*(v) for every edge uv.

    Raises:
        IncompleteColoringError: If the coloring is partial.
    """
    parts = partitions(graph, coloring)
    report = _report(graph, parts, graph.edges)
    if not report.proper:
        logger.debug("coloring is not distinguishing: %d violation(s)", len(report.violations))
    return report


def verify_among(graph: Graph, coloring: EdgeColoring, scope: Iterable[int]) -> VerificationReport:
    """
    Checks that the coloring is distinguishing among a vertex set: every scope vertex is fully
    colored and adjacent scope vertices get different partitions.
    """
    scope = set(scope)
    parts = partitions(graph, coloring, sorted(scope))
    edges = [e for e in graph.edges if e[0] in scope and e[1] in scope]
    return _report(graph, parts, edges)


def is_degree_distinguishing(graph: Graph) -> bool:
    """True iff the monochromatic coloring is distinguishing, i.e. dal(G) = 1."""
    return all(graph.degree(u) != graph.degree(v) for u, v in graph.edges)
