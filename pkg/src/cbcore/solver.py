"""
solver.py

This module provides the exact search for color-blind distinguishing edge-colorings: deciding
dal(G) <= k, computing dal(G) up to a bound, and enumerating every extension of a partial
coloring. All other components use it as their oracle.

The search assigns colors edge by edge along a fixed order. A vertex is checked only once all of
its edges are colored: its partition must differ from every neighbor whose partition is already
known (fully colored, or fixed as a hypothesis). With symmetry breaking on, colors appear for the
first time in increasing order, so the first witness found is the canonically least one.

Classes:
    SearchConfig: Color count, edge order, symmetry breaking and node budget.
    DalOutcome: Result codes of compute_dal.
    DalResult: Outcome of compute_dal with its witness or certificate.

Functions:
    default_edge_order: High-constraint edges first.
    decide_dal_le_k: Witness k-coloring or None.
    decide_dal_le_k_parallel: Same decision split over worker processes.
    compute_dal: Least k up to k_max, or a proof of dal = infinity.
    enumerate_extensions: Every extension of a partial coloring that is distinguishing among a scope.
    naive_decide: Tries all k^m colorings; the reference for small graphs.
"""
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from cbcore.coloring import EdgeColoring, Partition, canonical_partition, is_degree_distinguishing, \
    verify_distinguishing
from cbcore.errors import BudgetExceededError, InvariantViolationError, PreconditionError
from cbcore.graph import Edge, Graph, normalize_edge
from cbcore.structure import InfiniteCertificate, classify_infinite

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchConfig:
    """
    Parameters of one exact search.

    Attributes:
        k (Optional[int]): Color count; None lets the caller's k apply.
        edge_order (Optional[Tuple[Edge, ...]]): Permutation of E(G); None selects default_edge_order.
        symmetry_breaking (bool): Introduce colors in increasing order along edge_order.
        node_budget (Optional[int]): Maximum number of color trials before giving up.
    """
    k: Optional[int] = None
    edge_order: Optional[Tuple[Edge, ...]] = None
    symmetry_breaking: bool = True
    node_budget: Optional[int] = None


class DalOutcome(Enum):
    FINITE = "finite"
    NO_COLORING_UP_TO = "no-coloring-up-to"
    PROVEN_INFINITE = "proven-infinite"


@dataclass(frozen=True)
class DalResult:
    """
    Result of compute_dal.

    Attributes:
        outcome (DalOutcome): Which case applies.
        k (Optional[int]): Least k found, for FINITE.
        witness (Optional[EdgeColoring]): Distinguishing k-coloring, for FINITE.
        k_max (Optional[int]): Exhausted bound, for NO_COLORING_UP_TO.
        certificate (Optional[InfiniteCertificate]): Proof, for PROVEN_INFINITE.
    """
    outcome: DalOutcome
    k: Optional[int] = None
    witness: Optional[EdgeColoring] = None
    k_max: Optional[int] = None
    certificate: Optional[InfiniteCertificate] = None

    @classmethod
    def finite(cls, k: int, witness: EdgeColoring) -> "DalResult":
        return cls(DalOutcome.FINITE, k=k, witness=witness)

    @classmethod
    def no_coloring_up_to(cls, k_max: int) -> "DalResult":
        return cls(DalOutcome.NO_COLORING_UP_TO, k_max=k_max)

    @classmethod
    def proven_infinite(cls, certificate: InfiniteCertificate) -> "DalResult":
        return cls(DalOutcome.PROVEN_INFINITE, certificate=certificate)


def default_edge_order(graph: Graph, edges: Optional[Iterable[Edge]] = None) -> Tuple[Edge, ...]:
    """Orders edges by descending min(d(u), d(v)), then lexicographically."""
    edges = graph.edges if edges is None else edges
    return tuple(sorted(edges, key=lambda e: (-min(graph.degree(e[0]), graph.degree(e[1])), e)))


def default_k_max(graph: Graph) -> int:
    return max(graph.max_degree, 3)


class _Backtracker:
    """
    Depth-first search over the free edges of a graph.

    Vertices in `hypotheses` have their partition fixed in advance and are compared by that value
    only. A completed vertex is compared with a neighbor when at least one of the two is in scope.
    """

    def __init__(self, graph: Graph, k: int, order: Sequence[Edge], fixed: Mapping[Edge, int],
                 scope: Optional[Iterable[int]] = None,
                 hypotheses: Optional[Mapping[int, Partition]] = None,
                 forbidden: Optional[Mapping[int, Iterable[Partition]]] = None,
                 symmetry_breaking: bool = False, initial_top: int = 0,
                 node_budget: Optional[int] = None):
        self.graph = graph
        self.k = k
        self.order = list(order)
        self.colors: Dict[Edge, int] = dict(fixed)
        self.scope: Optional[FrozenSet[int]] = None if scope is None else frozenset(scope)
        self.hypotheses = dict(hypotheses or {})
        self.forbidden = {v: frozenset(ps) for v, ps in (forbidden or {}).items()}
        self.symmetry_breaking = symmetry_breaking
        self.initial_top = initial_top
        self.node_budget = node_budget
        self.nodes = 0
        self.counts = [[0] * k for _ in graph.vertices]
        self.remaining = list(graph.degrees)
        for (u, v), c in self.colors.items():
            for x in (u, v):
                self.counts[x][c - 1] += 1
                self.remaining[x] -= 1

    def _in_scope(self, v: int) -> bool:
        return self.scope is None or v in self.scope

    def _known(self, v: int) -> Optional[Partition]:
        if v in self.hypotheses:
            return self.hypotheses[v]
        if self.remaining[v] == 0:
            return canonical_partition(self.counts[v])
        return None

    def _vertex_ok(self, v: int) -> bool:
        if v in self.hypotheses:
            return True
        p = canonical_partition(self.counts[v])
        if p in self.forbidden.get(v, ()):
            return False
        for u in self.graph.neighbors(v):
            if self._in_scope(v) or self._in_scope(u):
                if self._known(u) == p:
                    return False
        return True

    def _consistent_at_start(self) -> bool:
        for v in self.graph.vertices:
            if self.remaining[v] == 0 and not self._vertex_ok(v):
                return False
        for u, v in self.graph.edges:
            if u in self.hypotheses and v in self.hypotheses and (self._in_scope(u) or self._in_scope(v)):
                if self.hypotheses[u] == self.hypotheses[v]:
                    return False
        return True

    def solutions(self) -> Iterator[Dict[Edge, int]]:
        if self._consistent_at_start():
            yield from self._extend(0, self.initial_top)

    def _extend(self, index: int, top: int) -> Iterator[Dict[Edge, int]]:
        if index == len(self.order):
            yield dict(self.colors)
            return
        edge = self.order[index]
        u, v = edge
        limit = min(self.k, top + 1) if self.symmetry_breaking else self.k
        for c in range(1, limit + 1):
            self.nodes += 1
            if self.node_budget is not None and self.nodes > self.node_budget:
                raise BudgetExceededError(self.nodes)
            self.colors[edge] = c
            self.counts[u][c - 1] += 1
            self.counts[v][c - 1] += 1
            self.remaining[u] -= 1
            self.remaining[v] -= 1
            if all(self.remaining[x] or self._vertex_ok(x) for x in (u, v)):
                yield from self._extend(index + 1, max(top, c))
            self.remaining[u] += 1
            self.remaining[v] += 1
            self.counts[u][c - 1] -= 1
            self.counts[v][c - 1] -= 1
            del self.colors[edge]


def _resolve(graph: Graph, k: int, config: Optional[SearchConfig]) -> SearchConfig:
    config = config or SearchConfig()
    if config.k is not None and config.k != k:
        raise PreconditionError("k", f"search config k={config.k} disagrees with k={k}")
    if k < 1:
        raise PreconditionError("k>=1", f"k must be at least 1, got {k}")
    order = config.edge_order
    if order is None:
        order = default_edge_order(graph)
    else:
        order = tuple(normalize_edge(*e) for e in order)
        if len(order) != graph.edge_count or set(order) != graph.edge_set:
            raise PreconditionError("edge-order", "edge order is not a permutation of the edge set")
    return replace(config, k=k, edge_order=order)


def _gate(graph: Graph, witness: EdgeColoring) -> EdgeColoring:
    if not verify_distinguishing(graph, witness).proper:
        raise InvariantViolationError("search produced a coloring that is not distinguishing")
    return witness


def decide_dal_le_k(graph: Graph, k: int, config: Optional[SearchConfig] = None) -> Optional[EdgeColoring]:
    """
    Decides whether G has a color-blind distinguishing k-edge-coloring.

    Args:
        graph: The graph.
        k: Number of colors, at least 1.
        config: Edge order, symmetry breaking and node budget.

    Returns:
        Optional[EdgeColoring]: A verified witness, canonically least when symmetry breaking is on,
        or None if no such coloring exists.

    Raises:
        BudgetExceededError: If the node budget runs out before the question is settled.
        PreconditionError: If k < 1 or the edge order is not a permutation of E(G).
    """
    config = _resolve(graph, k, config)
    search = _Backtracker(graph, k, config.edge_order, {}, symmetry_breaking=config.symmetry_breaking,
                          node_budget=config.node_budget)
    found = next(search.solutions(), None)
    logger.debug("dal <= %d on %d vertices/%d edges: %s after %d nodes",
                 k, graph.vertex_count, graph.edge_count, found is not None, search.nodes)
    if found is None:
        return None
    return _gate(graph, EdgeColoring(k, found))


def _canonical_prefixes(graph: Graph, config: SearchConfig, depth: int) -> List[Dict[Edge, int]]:
    # Only vertices completed inside the prefix are checked, so no discarded prefix has an extension.
    head = config.edge_order[:depth]
    search = _Backtracker(graph, config.k, head, {}, symmetry_breaking=config.symmetry_breaking)
    return list(search.solutions())


def _search_prefix(graph: Graph, k: int, order: Tuple[Edge, ...], prefix: Dict[Edge, int],
                   symmetry_breaking: bool, node_budget: Optional[int]):
    top = max(prefix.values(), default=0)
    search = _Backtracker(graph, k, order, prefix, symmetry_breaking=symmetry_breaking, initial_top=top,
                          node_budget=node_budget)
    try:
        found = next(search.solutions(), None)
    except BudgetExceededError as e:
        return "budget", e.nodes
    return "done", None if found is None else tuple(found[e] for e in graph.edges)


def decide_dal_le_k_parallel(graph: Graph, k: int, config: Optional[SearchConfig] = None, jobs: int = 2,
                             prefix_depth: int = 6) -> Optional[EdgeColoring]:
    """
    Parallel variant of decide_dal_le_k.

    The search tree is cut after the first prefix_depth edges; subtrees run in worker processes and
    the first success in prefix order is returned, which is the same witness the sequential search
    finds. The node budget applies to each subtree separately.
    """
    config = _resolve(graph, k, config)
    if jobs <= 1 or graph.edge_count <= prefix_depth:
        return decide_dal_le_k(graph, k, config)
    prefixes = _canonical_prefixes(graph, config, prefix_depth)
    rest = config.edge_order[prefix_depth:]
    logger.debug("parallel search over %d prefixes with %d jobs", len(prefixes), jobs)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(_search_prefix, graph, k, rest, p, config.symmetry_breaking, config.node_budget)
                   for p in prefixes]
        for future in futures:
            status, value = future.result()
            if status == "budget":
                for f in futures:
                    f.cancel()
                raise BudgetExceededError(value)
            if value is not None:
                for f in futures:
                    f.cancel()
                return _gate(graph, EdgeColoring.from_sequence(graph, value, k))
    return None


def compute_dal(graph: Graph, k_max: Optional[int] = None, config: Optional[SearchConfig] = None,
                jobs: int = 1) -> DalResult:
    """
    Computes dal(G) up to a bound.

    Args:
        graph: The graph.
        k_max: Largest k tried; defaults to max(max degree, 3).
        config: Search options; its k field must be unset.
        jobs: Worker processes for each decision.

    Returns:
        DalResult: PROVEN_INFINITE if a component is a single edge, an odd cycle or an odd cycle of
        diamonds; FINITE with the least k <= k_max; NO_COLORING_UP_TO otherwise.
    """
    if k_max is None:
        k_max = default_k_max(graph)
    if k_max < 1:
        raise PreconditionError("k_max>=1", f"k_max must be at least 1, got {k_max}")
    certificate = classify_infinite(graph)
    if certificate is not None:
        logger.info("dal is infinite: %s", certificate.describe())
        return DalResult.proven_infinite(certificate)
    if is_degree_distinguishing(graph):
        return DalResult.finite(1, EdgeColoring.monochromatic(graph))
    for k in range(2, k_max + 1):
        if jobs > 1:
            witness = decide_dal_le_k_parallel(graph, k, config, jobs=jobs)
        else:
            witness = decide_dal_le_k(graph, k, config)
        if witness is not None:
            logger.info("dal = %d", k)
            return DalResult.finite(k, witness)
    return DalResult.no_coloring_up_to(k_max)


def enumerate_extensions(graph: Graph, partial: EdgeColoring, scope: Iterable[int], k: Optional[int] = None,
                         hypotheses: Optional[Mapping[int, Partition]] = None,
                         forbidden: Optional[Mapping[int, Iterable[Partition]]] = None,
                         edges: Optional[Iterable[Edge]] = None,
                         node_budget: Optional[int] = None) -> Iterator[EdgeColoring]:
    """
    Yields every extension of a partial coloring that is distinguishing among a scope.

    The free edges are the uncolored edges incident to the scope (or the given edges). A completed
    vertex is compared with each neighbor whose partition is known when at least one of them lies in
    the scope; hypotheses fix the partitions of boundary vertices.

    Args:
        graph: The graph.
        partial: Precolored edges; they are never changed.
        scope: Vertices whose partitions must be distinguished.
        k: Color count; defaults to partial.color_count.
        hypotheses: Vertex -> partition assumed for vertices outside the search.
        forbidden: Vertex -> partitions the vertex may not take.
        edges: Free edges to color instead of the default set.
        node_budget: Optional cap on color trials.

    Yields:
        EdgeColoring: Each extension exactly once.
    """
    scope = frozenset(scope)
    k = partial.color_count if k is None else k
    if edges is None:
        free = {e for v in scope for e in graph.incident_edges(v) if e not in partial.assignment}
    else:
        free = {normalize_edge(*e) for e in edges} - set(partial.assignment)
    order = default_edge_order(graph, free)
    search = _Backtracker(graph, k, order, partial.assignment, scope=scope, hypotheses=hypotheses,
                          forbidden=forbidden, node_budget=node_budget)
    for found in search.solutions():
        yield EdgeColoring(k, found)


def naive_decide(graph: Graph, k: int) -> Optional[EdgeColoring]:
    """Tries all k^m colorings in lexicographic order; only for small graphs."""
    for colors in itertools.product(range(1, k + 1), repeat=graph.edge_count):
        coloring = EdgeColoring.from_sequence(graph, colors, k)
        if verify_distinguishing(graph, coloring).proper:
            return coloring
    return None
