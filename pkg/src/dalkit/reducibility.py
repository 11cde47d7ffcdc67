"""
reducibility.py

This module provides reducible configurations (H, D, M): validation, enumeration of potential
pairs, the mechanical reducibility check, pattern matching in a host graph and the reduction
G - D + M. Four configurations are built in; three of them are the reductions used by the cubic
colorer.

S, the boundary, is always derived as the neighbors of D outside D.

A potential pair colors every M edge and fixes a partition on every S vertex, with matched S
vertices getting different partitions. An edge between D and an S vertex takes the color of the
M edge covering that S vertex. When every H-edge of an S vertex is colored this way and the
vertex has degree 3, its partition is already determined and replaces the hypothesis.

A configuration may carry side conditions: partitions that a vertex outside D must not take in
the reduced graph. Potential pairs breaking a side condition are not enumerated, and the cubic
colorer passes the side conditions to the reduced graph as constraints. Every side condition sits
on a 3-vertex next to a leaf of the reduced graph.

Classes:
    Configuration: A named triple (H, D, M) with vertex names and side conditions.
    PotentialPair: Colors on M and hypothesized partitions on S.
    ReducibilityReport: Outcome of check_reducible.
"""
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

from cbcore.coloring import CUBIC_PARTITIONS, EdgeColoring, Partition, canonical_partition, color_blind_partition
from cbcore.errors import EmbeddingError, StructuralViolationError
from cbcore.graph import Edge, Graph, normalize_edge, to_networkx
from cbcore.solver import enumerate_extensions

logger = logging.getLogger(__name__)

COLORS = (1, 2, 3)


@dataclass(frozen=True)
class Configuration:
    """
    A configuration (H, D, M).

    Attributes:
        name (str): Label such as "1-diamond".
        pattern (Graph): H, a {1,3}-regular graph.
        interior (FrozenSet[int]): D, the vertices recolored by a reduction.
        matching (Tuple[Edge, ...]): M, pairs of H-vertices, not necessarily H-edges.
        names (Tuple[str, ...]): Display name of each H-vertex.
        avoid (Tuple[Tuple[int, Partition], ...]): Side conditions, H-vertex -> partition it must
            not take in the reduced graph.
    """
    name: str
    pattern: Graph
    interior: FrozenSet[int]
    matching: Tuple[Edge, ...]
    names: Tuple[str, ...]
    avoid: Tuple[Tuple[int, Partition], ...] = ()

    @classmethod
    def from_names(cls, name: str, edges: Sequence[Tuple[str, str]], interior: Iterable[str],
                   matching: Sequence[Tuple[str, str]],
                   avoid: Sequence[Tuple[str, Partition]] = ()) -> "Configuration":
        """
        Builds a configuration from named vertices; ids follow first appearance in edges, then matching.

        Raises:
            StructuralViolationError: If D, M or a side condition name a vertex missing from H.
        """
        ids: Dict[str, int] = {}
        for a, b in list(edges) + list(matching):
            for x in (a, b):
                ids.setdefault(x, len(ids))
        missing = [x for x in list(interior) + [x for x, _ in avoid] if x not in ids]
        if missing:
            raise StructuralViolationError("names", f"D or A names unknown vertices {missing}")
        pattern = Graph.from_edges(((ids[a], ids[b]) for a, b in edges), len(ids))
        names = tuple(sorted(ids, key=ids.get))
        return cls(name, pattern, frozenset(ids[x] for x in interior),
                   tuple(normalize_edge(ids[a], ids[b]) for a, b in matching), names,
                   tuple(sorted((ids[x], tuple(p)) for x, p in avoid)))

    @property
    def boundary(self) -> FrozenSet[int]:
        """S = N(D) minus D."""
        return frozenset(w for v in self.interior for w in self.pattern.neighbors(v)) - self.interior

    def vertex_id(self, name: str) -> int:
        return self.names.index(name)

    def interior_edges(self) -> List[Edge]:
        """Edges of H with an endpoint in D."""
        return [e for e in self.pattern.edges if e[0] in self.interior or e[1] in self.interior]

    def covering_edge(self) -> Dict[int, Edge]:
        """S vertex -> the M edge covering it."""
        boundary = self.boundary
        return {x: e for e in self.matching for x in e if x in boundary}

    def avoided(self) -> Dict[int, FrozenSet[Partition]]:
        """H-vertex -> partitions it must not take in the reduced graph."""
        out: Dict[int, FrozenSet[Partition]] = {}
        for x, p in self.avoid:
            out[x] = out.get(x, frozenset()) | {p}
        return out


def validate_configuration(config: Configuration) -> None:
    """
    Checks the configuration invariants.

    Raises:
        StructuralViolationError: Naming the first broken invariant: "degrees", "one-outside-neighbor",
            "interior-edges", "matching", "matching-edges", "saturates" or "avoid".
    """
    h = config.pattern
    if any(d not in (1, 3) for d in h.degrees):
        raise StructuralViolationError("degrees", f"{config.name}: H is not {{1,3}}-regular")
    for v in config.interior:
        outside = [w for w in h.neighbors(v) if w not in config.interior]
        if len(outside) > 1:
            raise StructuralViolationError(
                "one-outside-neighbor", f"{config.name}: {config.names[v]} has {len(outside)} neighbors outside D")
    if not any(u in config.interior and v in config.interior for u, v in h.edges):
        raise StructuralViolationError("interior-edges", f"{config.name}: D spans no edge of H")
    covered = [x for e in config.matching for x in e]
    if len(covered) != len(set(covered)) or any(u == v for u, v in config.matching):
        raise StructuralViolationError("matching", f"{config.name}: M is not a matching")
    boundary = config.boundary
    for u, v in config.matching:
        in_s = (u in boundary) + (v in boundary)
        in_d = (u in config.interior) + (v in config.interior)
        # Either an S-S pair, or one S endpoint with the other in D or outside D u S.
        if in_s == 0 or (in_s == 1 and in_d == 1 and not h.has_edge(u, v)):
            raise StructuralViolationError(
                "matching-edges", f"{config.name}: M edge {config.names[u]}{config.names[v]} is not usable")
    unsaturated = sorted(config.names[x] for x in boundary if x not in covered)
    if unsaturated:
        raise StructuralViolationError("saturates", f"{config.name}: M leaves {unsaturated} unsaturated")
    for x, p in config.avoid:
        if x in config.interior or p not in CUBIC_PARTITIONS:
            raise StructuralViolationError(
                "avoid", f"{config.name}: side condition {config.names[x]} != {p} is not usable")


@dataclass(frozen=True)
class PotentialPair:
    """
    Colors on M and hypothesized partitions on S.

    Attributes:
        colors (Tuple[Tuple[Edge, int], ...]): M edge -> color in 1..3.
        partitions (Tuple[Tuple[int, Partition], ...]): S vertex -> partition.
    """
    colors: Tuple[Tuple[Edge, int], ...]
    partitions: Tuple[Tuple[int, Partition], ...]

    def color_map(self) -> Dict[Edge, int]:
        return dict(self.colors)

    def partition_map(self) -> Dict[int, Partition]:
        return dict(self.partitions)

    def describe(self, config: Configuration) -> str:
        cs = ", ".join(f"{config.names[u]}{config.names[v]}={c}" for (u, v), c in self.colors)
        ps = ", ".join(f"{config.names[x]}={p}" for x, p in self.partitions)
        return f"[{cs}; {ps}]"


def enumerate_potential_pairs(config: Configuration) -> Iterator[PotentialPair]:
    """
    Yields every potential pair once.

    Each M edge contributes 3 colors times the partition assignments of its S endpoints: 6 ordered
    distinct pairs for an S-S edge, 3 for an edge with one S endpoint. Assignments breaking a side
    condition on S are left out.

    Raises:
        StructuralViolationError: If the configuration is invalid.
    """
    validate_configuration(config)
    choices = []
    for e, ends, parts in _matching_choices(config):
        choices.append([(e, c, tuple(zip(ends, p))) for c in COLORS for p in parts])
    for combo in itertools.product(*choices):
        colors = tuple((e, c) for e, c, _ in combo)
        partitions = tuple(sorted(item for _, _, assigned in combo for item in assigned))
        yield PotentialPair(colors, partitions)


def _matching_choices(config: Configuration) -> List[Tuple[Edge, List[int], List[Tuple[Partition, ...]]]]:
    boundary = config.boundary
    avoided = config.avoided()
    out = []
    for e in config.matching:
        ends = [x for x in e if x in boundary]
        parts = [p for p in itertools.product(CUBIC_PARTITIONS, repeat=len(ends))
                 if len(set(p)) == len(p) and not any(q in avoided.get(x, ()) for x, q in zip(ends, p))]
        out.append((e, ends, parts))
    return out


def potential_pair_count(config: Configuration) -> int:
    total = 1
    for _, _, parts in _matching_choices(config):
        total *= len(COLORS) * len(parts)
    return total


def _pair_precoloring(config: Configuration, pair: PotentialPair) -> Dict[Edge, int]:
    colors = pair.color_map()
    covering = config.covering_edge()
    fixed = {e: c for e, c in colors.items() if config.pattern.has_edge(*e)}
    for s, e in covering.items():
        for x in config.pattern.neighbors(s):
            if x in config.interior:
                fixed[normalize_edge(x, s)] = colors[e]
    return fixed


def _determined_partition(config: Configuration, fixed: Mapping[Edge, int], s: int) -> Optional[Partition]:
    h = config.pattern
    at_s = h.incident_edges(s)
    if h.degree(s) != 3 or any(e not in fixed for e in at_s):
        return None
    counts = [0, 0, 0]
    for e in at_s:
        counts[fixed[e] - 1] += 1
    return canonical_partition(counts)


def extend_pair(config: Configuration, pair: PotentialPair) -> Optional[EdgeColoring]:
    """
    First extension of the pair over the edges of H at D, as a coloring of H, or None.

    D's partitions, together with the partitions on S, properly color D u S.
    """
    fixed = _pair_precoloring(config, pair)
    hypotheses = {}
    for s, p in pair.partitions:
        determined = _determined_partition(config, fixed, s)
        if determined is None:
            hypotheses[s] = p
        elif determined != p:
            # The realized partition is the one neighbors see.
            logger.debug("%s: partition at %s is determined, hypothesis %s replaced",
                         config.name, config.names[s], p)
    partial = EdgeColoring(3, fixed)
    extensions = enumerate_extensions(config.pattern, partial, config.interior, k=3, hypotheses=hypotheses,
                                      edges=config.interior_edges())
    return next(extensions, None)


def has_extension(config: Configuration, pair: PotentialPair) -> bool:
    """
    True iff the pair extends over the edges of H at D so that D's partitions, together with the
    partitions on S, properly color D u S.
    """
    return extend_pair(config, pair) is not None


def pair_from_coloring(config: Configuration, embedding: Mapping[int, int], vertex_map: Mapping[int, int],
                       reduced: Graph, coloring: EdgeColoring) -> PotentialPair:
    """
    Reads the potential pair a coloring of the reduced graph induces on the configuration.

    M edges take their colors in the reduced graph. An S vertex whose partition the pair determines
    takes that partition; every other S vertex takes its partition in the reduced graph.

    Args:
        config: The configuration.
        embedding: H-vertex -> vertex of the original graph.
        vertex_map: Original vertex -> reduced vertex, as returned by apply_reduction.
        reduced: The reduced graph.
        coloring: A coloring of the reduced graph.
    """
    at = {x: vertex_map[embedding[x]] for x in config.pattern.vertices if embedding[x] in vertex_map}
    colors = tuple((e, coloring.color_of(at[e[0]], at[e[1]])) for e in config.matching)
    fixed = _pair_precoloring(config, PotentialPair(colors, ()))
    partitions = []
    for s in sorted(config.boundary):
        determined = _determined_partition(config, fixed, s)
        if determined is None:
            determined = color_blind_partition(reduced, coloring, at[s])
        partitions.append((s, determined))
    return PotentialPair(colors, tuple(partitions))


@dataclass(frozen=True)
class ReducibilityReport:
    """
    Outcome of check_reducible.

    Attributes:
        name (str): Configuration name.
        reducible (bool): True iff no potential pair failed.
        pairs_checked (int): Number of potential pairs enumerated.
        failures (Tuple[PotentialPair, ...]): Pairs without a valid extension.
    """
    name: str
    reducible: bool
    pairs_checked: int
    failures: Tuple[PotentialPair, ...]


def _check_pair(args: Tuple[Configuration, PotentialPair]) -> bool:
    return has_extension(*args)


def check_reducible(config: Configuration, jobs: int = 1) -> ReducibilityReport:
    """
    Checks every potential pair for an extension over D.

    Args:
        config: The configuration.
        jobs: Worker processes; results are merged in enumeration order.

    Returns:
        ReducibilityReport: With the full pair count and every failing pair.

    Raises:
        StructuralViolationError: If the configuration is invalid.
    """
    pairs = list(enumerate_potential_pairs(config))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_check_pair, [(config, p) for p in pairs], chunksize=16))
    else:
        results = [has_extension(config, p) for p in pairs]
    failures = tuple(p for p, ok in zip(pairs, results) if not ok)
    logger.info("%s: %d potential pairs, %d failures", config.name, len(pairs), len(failures))
    return ReducibilityReport(config.name, not failures, len(pairs), failures)


def _pattern_requirements(config: Configuration) -> Dict[int, Optional[int]]:
    # Vertices of D keep all their H-edges in the host; vertices of S have degree 3 there.
    need: Dict[int, Optional[int]] = {}
    boundary = config.boundary
    for v in config.pattern.vertices:
        if v in config.interior:
            need[v] = config.pattern.degree(v)
        elif v in boundary:
            need[v] = 3
        else:
            need[v] = None
    return need


def _host_networkx(graph: Graph) -> nx.Graph:
    g = to_networkx(graph)
    nx.set_node_attributes(g, {v: graph.degree(v) for v in graph.vertices}, "degree")
    return g


def iter_embeddings(graph: Graph, config: Configuration) -> Iterator[Dict[int, int]]:
    """
    Yields every embedding of H in the graph that a reduction can use, as H-vertex -> graph vertex.

    An embedding is an injective homomorphism where the images of D keep their H-degree, the
    images of S have degree 3, and M pairs that are not H-edges are not edges of the graph.
    The order is the matcher's order over vertices inserted in increasing order.
    """
    validate_configuration(config)
    pattern = to_networkx(config.pattern)
    nx.set_node_attributes(pattern, _pattern_requirements(config), "need")
    matcher = isomorphism.GraphMatcher(
        _host_networkx(graph), pattern,
        node_match=lambda host, pat: pat["need"] is None or host["degree"] == pat["need"])
    extra = [e for e in config.matching if not config.pattern.has_edge(*e)]
    for mapping in matcher.subgraph_monomorphisms_iter():
        embedding = {h: g for g, h in mapping.items()}
        if any(graph.has_edge(embedding[u], embedding[v]) for u, v in extra):
            continue
        yield embedding


def find_configuration(graph: Graph, config: Configuration) -> Optional[Dict[int, int]]:
    """Returns the first usable embedding of the configuration, or None."""
    return next(iter_embeddings(graph, config), None)


def check_embedding(graph: Graph, embedding: Mapping[int, int], config: Configuration) -> None:
    """
    Raises:
        EmbeddingError: If the embedding is partial, not injective, misses an H-edge or breaks a
            degree condition.
    """
    if set(embedding) != set(config.pattern.vertices):
        raise EmbeddingError(f"{config.name}: embedding must map every vertex of H")
    images = list(embedding.values())
    if len(set(images)) != len(images):
        raise EmbeddingError(f"{config.name}: embedding is not injective")
    if any(not 0 <= x < graph.vertex_count for x in images):
        raise EmbeddingError(f"{config.name}: embedding leaves the graph")
    for u, v in config.pattern.edges:
        if not graph.has_edge(embedding[u], embedding[v]):
            raise EmbeddingError(f"{config.name}: H-edge {config.names[u]}{config.names[v]} is not a graph edge")
    for v, need in _pattern_requirements(config).items():
        if need is not None and graph.degree(embedding[v]) != need:
            raise EmbeddingError(
                f"{config.name}: {config.names[v]} maps to a vertex of degree {graph.degree(embedding[v])}, need {need}")


def apply_reduction(graph: Graph, embedding: Mapping[int, int],
                    config: Configuration) -> Tuple[Graph, Dict[int, int]]:
    """
    Builds the reduced graph G - D + M.

    Deletes every edge with an endpoint in the image of D, adds the images of the M edges and drops
    isolated vertices; the remaining vertices are renumbered in increasing order.

    Returns:
        Tuple[Graph, Dict[int, int]]: The reduced graph and the map old vertex -> new vertex.

    Raises:
        EmbeddingError: If the embedding is unusable.
    """
    check_embedding(graph, embedding, config)
    removed = {embedding[v] for v in config.interior}
    edges = {e for e in graph.edges if e[0] not in removed and e[1] not in removed}
    edges |= {normalize_edge(embedding[u], embedding[v]) for u, v in config.matching}
    keep = sorted({x for e in edges for x in e})
    index = {v: i for i, v in enumerate(keep)}
    reduced = Graph(len(keep), tuple((index[u], index[v]) for u, v in edges))
    logger.debug("%s reduction: %d/%d -> %d/%d vertices/edges", config.name, graph.vertex_count,
                 graph.edge_count, reduced.vertex_count, reduced.edge_count)
    return reduced, index


def one_diamond() -> Configuration:
    """
    Triangle abc joined through cx to the diamond xyzw, which hangs off r.

    Every extension gives c the partition (1, 1, 1) and x = w = (2, 1), so r must not take (2, 1);
    r is next to the leaf w in the reduced graph.
    """
    return Configuration.from_names(
        "1-diamond",
        [("a", "b"), ("a", "c"), ("b", "c"), ("a", "p"), ("b", "q"), ("c", "x"),
         ("x", "y"), ("x", "z"), ("y", "z"), ("y", "w"), ("z", "w"), ("w", "r")],
        ["a", "b", "c", "x", "y", "z", "w"],
        [("p", "q"), ("w", "r")],
        avoid=[("r", (2, 1))])


def two_diamonds() -> Configuration:
    return Configuration.from_names(
        "2-diamonds",
        [("u", "x1"), ("x1", "y1"), ("x1", "z1"), ("y1", "z1"), ("y1", "w1"), ("z1", "w1"), ("w1", "x2"),
         ("x2", "y2"), ("x2", "z2"), ("y2", "z2"), ("y2", "w2"), ("z2", "w2"), ("w2", "v")],
        ["x1", "y1", "z1", "w1", "x2", "y2", "z2", "w2"],
        [("u", "v")])


def two_triangle() -> Configuration:
    """
    Triangles a1b1c1 and a2b2c2 joined by b1b2 and c1c2.

    a1 and a2 end up with one color on all three edges, so u and v, next to the leaves a1 and a2 of
    the reduced graph, must not take (3, 0, 0).
    """
    return Configuration.from_names(
        "2-triangle",
        [("u", "a1"), ("a1", "b1"), ("a1", "c1"), ("b1", "c1"), ("b1", "b2"), ("c1", "c2"),
         ("a2", "b2"), ("a2", "c2"), ("b2", "c2"), ("a2", "v")],
        ["b1", "c1", "b2", "c2"],
        [("u", "a1"), ("a2", "v")],
        avoid=[("u", (3,)), ("v", (3,))])


def sparse() -> Configuration:
    """
    Triangles a1b1c1 and a2b2c2 joined by the single edge c1c2.

    Not reducible: a1p and b1q share the color of pq, which leaves (1, 1, 1) as the only partition
    for c1, and likewise for c2. It is kept for the reducibility check and to recognize the graphs
    the cubic colorer hands to exact search.
    """
    return Configuration.from_names(
        "sparse",
        [("a1", "b1"), ("a1", "c1"), ("b1", "c1"), ("a1", "p"), ("b1", "q"), ("c1", "c2"),
         ("a2", "b2"), ("a2", "c2"), ("b2", "c2"), ("a2", "r"), ("b2", "s")],
        ["a1", "b1", "c1", "a2", "b2", "c2"],
        [("p", "q"), ("r", "s")])


def builtin_configurations() -> Tuple[Configuration, ...]:
    """The four built-in configurations."""
    return two_triangle(), one_diamond(), two_diamonds(), sparse()


def reductions() -> Tuple[Configuration, ...]:
    """The built-in configurations whose every potential pair extends, in the cubic colorer's search order."""
    return two_triangle(), one_diamond(), two_diamonds()


def builtin_configuration(name: str) -> Configuration:
    for config in builtin_configurations():
        if config.name == name:
            return config
    raise StructuralViolationError("name", f"no built-in configuration named {name!r}")
