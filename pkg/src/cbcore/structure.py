"""
structure.py

This module provides the structural analysis the colorers build on: connected components,
cut-edges, the block decomposition with its block-cutpoint tree, triangles, diamonds and the
classifier for the graph families known to admit no distinguishing coloring at all.

Classes:
    BlockDecomposition: Blocks, cut vertices and their incidences.
    Diamond: Two triangles xyz and yzw sharing the edge yz.
    InfiniteKind: Families with dal = infinity.
    InfiniteCertificate: A component witnessing dal = infinity.
"""
import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List, Optional, Tuple

import networkx as nx

from cbcore.graph import Edge, Graph, induced_subgraph, normalize_edge, to_networkx

logger = logging.getLogger(__name__)


def components(graph: Graph) -> List[FrozenSet[int]]:
    """Connected components, isolated vertices included, ordered by smallest vertex."""
    return sorted((frozenset(c) for c in nx.connected_components(to_networkx(graph))), key=min)


def is_connected(graph: Graph) -> bool:
    return graph.vertex_count > 0 and len(components(graph)) == 1


def is_tree(graph: Graph) -> bool:
    return is_connected(graph) and graph.edge_count == graph.vertex_count - 1


def cut_edges(graph: Graph) -> List[Edge]:
    """Edges whose removal disconnects their component, sorted."""
    return sorted(normalize_edge(u, v) for u, v in nx.bridges(to_networkx(graph)))


@dataclass(frozen=True)
class BlockDecomposition:
    """
    Biconnected decomposition of a graph.

    Attributes:
        blocks (Tuple[FrozenSet[Edge], ...]): Edge sets of the blocks; cut-edges are their own block.
        cut_vertices (FrozenSet[int]): Vertices lying in at least two blocks.
        block_cutpoint_edges (Tuple[Tuple[int, int], ...]): (block index, cut vertex) incidences.
    """
    blocks: Tuple[FrozenSet[Edge], ...]
    cut_vertices: FrozenSet[int]
    block_cutpoint_edges: Tuple[Tuple[int, int], ...]

    def block_vertices(self, index: int) -> FrozenSet[int]:
        return frozenset(x for e in self.blocks[index] for x in e)

    def blocks_at(self, v: int) -> List[int]:
        return [i for i, b in enumerate(self.blocks) if any(v in e for e in b)]

    def tree(self) -> nx.Graph:
        """The block-cutpoint graph, nodes ('B', i) for blocks and ('C', v) for cut vertices."""
        t = nx.Graph()
        t.add_nodes_from(("B", i) for i in range(len(self.blocks)))
        t.add_edges_from((("B", i), ("C", v)) for i, v in self.block_cutpoint_edges)
        return t


def block_decomposition(graph: Graph) -> BlockDecomposition:
    """
    Computes blocks and cut vertices.

    Returns:
        BlockDecomposition: Blocks ordered by their smallest edge.
    """
    g = to_networkx(graph)
    blocks = sorted(
        (frozenset(normalize_edge(u, v) for u, v in b) for b in nx.biconnected_component_edges(g)),
        key=min,
    )
    cut = frozenset(nx.articulation_points(g))
    incidences = []
    for i, b in enumerate(blocks):
        for v in sorted({x for e in b for x in e} & cut):
            incidences.append((i, v))
    logger.debug("block decomposition: %d blocks, %d cut vertices", len(blocks), len(cut))
    return BlockDecomposition(tuple(blocks), cut, tuple(incidences))


def triangles(graph: Graph) -> List[Tuple[int, int, int]]:
    found = []
    for u, v in graph.edges:
        for w in graph.neighbors(u):
            if w > v and graph.has_edge(v, w):
                found.append((u, v, w))
    return sorted(found)


@dataclass(frozen=True)
class Diamond:
    """
    A diamond: triangles xyz and yzw sharing the edge yz; x and w are its endpoints.

    Attributes:
        x (int): First endpoint (x < w).
        y (int): First shared vertex (y < z).
        z (int): Second shared vertex.
        w (int): Second endpoint.
    """
    x: int
    y: int
    z: int
    w: int

    @property
    def vertices(self) -> FrozenSet[int]:
        return frozenset((self.x, self.y, self.z, self.w))

    @property
    def endpoints(self) -> Tuple[int, int]:
        return self.x, self.w


def find_diamonds(graph: Graph) -> List[Diamond]:
    """Every diamond, reported once per shared edge yz and endpoint pair {x, w}."""
    found = []
    for y, z in graph.edges:
        common = sorted(set(graph.neighbors(y)) & set(graph.neighbors(z)))
        for x, w in itertools.combinations(common, 2):
            found.append(Diamond(x, y, z, w))
    return found


def is_cycle_of_diamonds(graph: Graph) -> Optional[int]:
    """
    Recognizes a cycle of diamonds.

    Returns:
        Optional[int]: The number t of diamonds (K_4 gives 1), or None.
    """
    n = graph.vertex_count
    if n == 0 or n % 4 or not graph.is_regular(3) or not is_connected(graph):
        return None
    if n == 4:
        return 1
    diamonds = find_diamonds(graph)
    if len(diamonds) != n // 4:
        return None
    covered = set()
    for d in diamonds:
        if graph.has_edge(d.x, d.w) or covered & d.vertices:
            return None
        covered |= d.vertices
    # 3-regular and connected, each diamond has exactly two outside edges: the quotient is a cycle.
    return n // 4 if len(covered) == n else None


class InfiniteKind(Enum):
    SINGLE_EDGE = "single-edge-component"
    ODD_CYCLE = "odd-cycle-component"
    ODD_CYCLE_OF_DIAMONDS = "odd-cycle-of-diamonds-component"


@dataclass(frozen=True)
class InfiniteCertificate:
    """
    A connected component whose structure forces dal = infinity.

    Attributes:
        kind (InfiniteKind): Which family the component belongs to.
        component (FrozenSet[int]): Its vertices in the host graph.
        diamonds (Optional[int]): Number of diamonds t for the diamond family.
    """
    kind: InfiniteKind
    component: FrozenSet[int]
    diamonds: Optional[int] = None

    def describe(self) -> str:
        text = f"{self.kind.value} on {sorted(self.component)}"
        if self.diamonds is not None:
            text += f" (t = {self.diamonds})"
        return text


def classify_infinite(graph: Graph) -> Optional[InfiniteCertificate]:
    """
    Looks for a component that is a single edge, an odd cycle or an odd cycle of diamonds.

    A None result does not assert that dal(G) is finite.
    """
    for comp in components(graph):
        if len(comp) < 2:
            continue
        sub, _ = induced_subgraph(graph, comp)
        if sub.vertex_count == 2:
            return InfiniteCertificate(InfiniteKind.SINGLE_EDGE, comp)
        if sub.is_regular(2) and sub.vertex_count % 2 == 1:
            return InfiniteCertificate(InfiniteKind.ODD_CYCLE, comp)
        t = is_cycle_of_diamonds(sub)
        if t is not None and t % 2 == 1:
            return InfiniteCertificate(InfiniteKind.ODD_CYCLE_OF_DIAMONDS, comp, t)
    return None

