"""
generators.py

This module provides the graph families used by the colorers, the test suites and the `gen`
command. Random families take a seed and are reproducible.

Functions:
    cycle_graph, path_graph, star_graph, complete_graph: Fixed small families.
    random_tree: Uniform labeled tree from a random Pruefer sequence.
    diamond_cycle: t diamonds chained in a cycle (t = 1 is K_4).
    joined_diamonds: Two diamonds joined by a cut-edge, with pendants.
    hairy_cycle: A cycle with a given number of pendant edges at each vertex.
    random_cactus: Random cactus, optionally repaired to meet the 2-color hypotheses.
    triangle_saturated: Replace every 3-vertex of a {1,3}-regular graph by a triangle.
    random_triangle_saturated_cubic: triangle_saturated applied to a random cubic graph.
    base_case_graph: The five irreducible base families of the cubic colorer.
    heawood_graph, cube_graph, k33_graph: Regular bipartite test graphs.
    random_regular_bipartite: Union of k random perfect matchings.
"""
import logging
import random
from typing import List, Optional, Sequence

import networkx as nx

from cbcore.errors import PreconditionError
from cbcore.graph import Edge, Graph, from_networkx, normalize_edge

logger = logging.getLogger(__name__)

BASE_CASE_FAMILIES = ("one-3-cycle", "two-3-cycles", "one-diamond", "two-diamonds", "prism")


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("n>=3", f"a cycle needs at least 3 vertices, got {n}")
    return Graph.from_edges(((i, (i + 1) % n) for i in range(n)), n)


def path_graph(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("n>=1", f"a path needs at least 1 vertex, got {n}")
    return Graph.from_edges(((i, i + 1) for i in range(n - 1)), n)


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(((0, i) for i in range(1, leaves + 1)), leaves + 1)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(((u, v) for u in range(n) for v in range(u + 1, n)), n)


def disjoint_union(*graphs: Graph) -> Graph:
    edges: List[Edge] = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.vertex_count
    return Graph(offset, tuple(edges))


def random_tree(n: int, seed: Optional[int] = None) -> Graph:
    """Uniformly random labeled tree on n vertices."""
    if n < 1:
        raise PreconditionError("n>=1", f"a tree needs at least 1 vertex, got {n}")
    if n == 1:
        return Graph(1)
    rng = random.Random(seed)
    sequence = [rng.randrange(n) for _ in range(n - 2)]
    tree, _ = from_networkx(nx.from_prufer_sequence(sequence))
    return tree


def _diamond_edges(x: int, y: int, z: int, w: int) -> List[Edge]:
    return [(x, y), (x, z), (y, z), (y, w), (z, w)]


def diamond_cycle(t: int) -> Graph:
    """
    Cycle of t diamonds. Diamond i uses x=4i, y=4i+1, z=4i+2, w=4i+3 and w_i is joined to
    x_{i+1}; for t = 1 this closes K_4.
    """
    if t < 1:
        raise PreconditionError("t>=1", f"need at least one diamond, got {t}")
    edges: List[Edge] = []
    for i in range(t):
        edges.extend(_diamond_edges(4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3))
        edges.append((4 * i + 3, 4 * ((i + 1) % t)))
    return Graph.from_edges(edges, 4 * t)


def joined_diamonds() -> Graph:
    """Diamonds 0-3 and 4-7 joined by the cut-edge 3-4, with pendants 8 at 0 and 9 at 7."""
    edges = _diamond_edges(0, 1, 2, 3) + _diamond_edges(4, 5, 6, 7) + [(3, 4), (0, 8), (7, 9)]
    return Graph.from_edges(edges, 10)


def hairy_cycle(n: int, hairs: Sequence[int]) -> Graph:
    """
    Cycle 0..n-1 where vertex i carries hairs[i] pendant edges (leaves numbered from n on).
    """
    if n < 3:
        raise PreconditionError("n>=3", f"a cycle needs at least 3 vertices, got {n}")
    if len(hairs) != n:
        raise PreconditionError("hairs", f"expected {n} pendant counts, got {len(hairs)}")
    edges = [(i, (i + 1) % n) for i in range(n)]
    nxt = n
    for i, h in enumerate(hairs):
        for _ in range(h):
            edges.append((i, nxt))
            nxt += 1
    return Graph.from_edges(edges, nxt)


def _cycle_blocks(graph: Graph) -> List[List[int]]:
    g = nx.Graph(graph.edges)
    return [sorted(c) for c in nx.biconnected_components(g) if len(c) >= 3]


def _add_pendant(edges: List[Edge], v: int, n: int) -> int:
    edges.append((v, n))
    return n + 1


def random_cactus(blocks: int, seed: Optional[int] = None, max_cycle: int = 6, cycle_probability: float = 0.6,
                  two_color_hypotheses: bool = False) -> Graph:
    """
    Grows a random cactus by attaching, at a random existing vertex, either a cycle of random
    length 3..max_cycle or a pendant edge.

    Args:
        blocks: Number of blocks grown before repairs.
        seed: Random seed.
        max_cycle: Longest cycle attached.
        cycle_probability: Chance that a new block is a cycle.
        two_color_hypotheses: Repair the result so that degree-2 vertices are independent and no
            cycle is an odd cycle with all vertices of degree 3, by attaching pendant edges.

    Returns:
        Graph: A connected cactus.
    """
    rng = random.Random(seed)
    edges: List[Edge] = []
    n = 1
    for _ in range(blocks):
        anchor = rng.randrange(n)
        if rng.random() < cycle_probability:
            length = rng.randint(3, max_cycle)
            ring = [anchor] + list(range(n, n + length - 1))
            n += length - 1
            edges.extend((ring[i], ring[(i + 1) % length]) for i in range(length))
        else:
            n = _add_pendant(edges, anchor, n)
    if two_color_hypotheses:
        n = _repair_two_color(edges, n)
    return Graph.from_edges(edges, n)


def _repair_two_color(edges: List[Edge], n: int) -> int:
    graph = Graph.from_edges(edges, n)
    for u, v in graph.edges:
        if graph.degree(u) == 2 and graph.degree(v) == 2:
            n = _add_pendant(edges, u, n)
            graph = Graph.from_edges(edges, n)
    for ring in _cycle_blocks(graph):
        if len(ring) % 2 == 1 and all(graph.degree(v) == 3 for v in ring):
            n = _add_pendant(edges, ring[0], n)
    return n


def triangle_saturated(graph: Graph) -> Graph:
    """
    Replaces every vertex of degree 3 by a triangle, each triangle corner taking one of the
    original edges. Degree-1 vertices are kept.

    Raises:
        PreconditionError: If some degree is neither 1 nor 3.
    """
    if any(d not in (1, 3) for d in graph.degrees):
        raise PreconditionError("{1,3}-regular", "every vertex must have degree 1 or 3")
    corner = {}
    n = 0
    edges: List[Edge] = []
    for v in graph.vertices:
        if graph.degree(v) == 3:
            ids = [n, n + 1, n + 2]
            n += 3
            edges.extend([(ids[0], ids[1]), (ids[0], ids[2]), (ids[1], ids[2])])
            for slot, w in enumerate(graph.neighbors(v)):
                corner[(v, w)] = ids[slot]
        else:
            corner[(v, graph.neighbors(v)[0])] = n
            n += 1
    for u, v in graph.edges:
        edges.append(normalize_edge(corner[(u, v)], corner[(v, u)]))
    return Graph.from_edges(edges, n)


def random_triangle_saturated_cubic(n: int, seed: Optional[int] = None) -> Graph:
    """Triangle-saturated cubic graph on 3n vertices from a random connected cubic graph on n vertices."""
    if n < 4 or n % 2:
        raise PreconditionError("n", f"a cubic graph needs an even n >= 4, got {n}")
    rng = random.Random(seed)
    while True:
        g = nx.random_regular_graph(3, n, seed=rng.randrange(2 ** 31))
        if nx.is_connected(g):
            break
    cubic, _ = from_networkx(g)
    return triangle_saturated(cubic)


def random_cubic_tree(internal: int, seed: Optional[int] = None) -> Graph:
    """Random tree whose vertices have degree 1 or 3, with the given number of degree-3 vertices."""
    rng = random.Random(seed)
    edges: List[Edge] = [(0, 1), (0, 2), (0, 3)]
    leaves = [1, 2, 3]
    n = 4
    for _ in range(internal - 1):
        v = leaves.pop(rng.randrange(len(leaves)))
        edges.extend([(v, n), (v, n + 1)])
        leaves.extend([n, n + 1])
        n += 2
    return Graph.from_edges(edges, n)


def base_case_graph(name: str) -> Graph:
    """
    Builds one of the irreducible base families.

    one-3-cycle: triangle 0,1,2 with pendants 3,4,5.
    two-3-cycles: triangles a1=0,b1=1,c1=2 and a2=3,b2=4,c2=5 joined by b1b2 and c1c2, pendants 6 at a1, 7 at a2.
    one-diamond: diamond x=0,y=1,z=2,w=3 with pendants 4 at x and 5 at w.
    two-diamonds: the cycle of two diamonds.
    prism: triangles 0,1,2 and 3,4,5 joined by 03, 14 and 25.
    """
    if name == "one-3-cycle":
        return Graph.from_edges([(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (2, 5)], 6)
    if name == "two-3-cycles":
        return Graph.from_edges([(0, 1), (0, 2), (1, 2), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5), (0, 6), (3, 7)], 8)
    if name == "one-diamond":
        return Graph.from_edges(_diamond_edges(0, 1, 2, 3) + [(0, 4), (3, 5)], 6)
    if name == "two-diamonds":
        return diamond_cycle(2)
    if name == "prism":
        return Graph.from_edges([(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)], 6)
    raise PreconditionError("family", f"unknown base family {name!r}; expected one of {BASE_CASE_FAMILIES}")


def heawood_graph() -> Graph:
    graph, _ = from_networkx(nx.heawood_graph())
    return graph


def cube_graph() -> Graph:
    graph, _ = from_networkx(nx.convert_node_labels_to_integers(nx.hypercube_graph(3), ordering="sorted"))
    return graph


def k33_graph() -> Graph:
    graph, _ = from_networkx(nx.complete_bipartite_graph(3, 3))
    return graph


def random_regular_bipartite(k: int, n: int, seed: Optional[int] = None) -> Graph:
    """
    Random simple k-regular bipartite graph with sides 0..n-1 and n..2n-1, built as the union of k
    random perfect matchings and resampled until no edge repeats.
    """
    if not 1 <= k <= n:
        raise PreconditionError("1<=k<=n", f"need 1 <= k <= n, got k={k}, n={n}")
    rng = random.Random(seed)
    while True:
        edges = set()
        for _ in range(k):
            partner = list(range(n, 2 * n))
            rng.shuffle(partner)
            edges.update(zip(range(n), partner))
        if len(edges) == k * n:
            return Graph.from_edges(sorted(edges), 2 * n)
