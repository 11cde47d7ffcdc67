"""
sat_reduction.py

This module provides the reduction from 3-SAT to the question dal(G) = 2.

Every variable x_i gets a copy of the variable gadget: a path p_0..p_{6m+7} where each p_y
(1 <= y <= 6m+6) carries a vertex v_y with two leaves r_{2y-1}, r_{2y}. Every clause gets a copy of
the clause gadget: a triangle z_1 z_2 z_3, a 14-cycle u_1..u_14 joined to it by z_1 u_1, and leaves
l_4, l_7, l_10 at u_4, u_7, u_10. Literal k of clause j is wired in by identifying t_k (u_4, u_7 or
u_10) with a vertex v_x of its variable's gadget, the two cycle neighbors of t_k with the leaves of
v_x, and the leaf s_k with p_x. Positive literals use odd positions x and negative literals even
ones, so in a 2-coloring c*(v_x) equals c*(v_1) exactly for positive literals. The partition (2, 1)
at v_1 reads as true and (3) as false.

Classes:
    CnfFormula: A 3-CNF formula.
    GadgetMap: Gadget vertex names inside the reduced graph.
    ClaimReport: Result of one exhaustive gadget check.

Functions:
    parse_dimacs, format_dimacs, read_dimacs, write_dimacs: DIMACS CNF text.
    variable_gadget, clause_gadget: The two gadgets on their own.
    build_reduction: The graph G_phi and its gadget map.
    encode_assignment: Coloring of G_phi from a truth assignment (2 colors iff it satisfies phi).
    decode_assignment: Satisfying assignment from a distinguishing 2-coloring.
    verify_claim1, verify_claim2, verify_claim3: Exhaustive checks of the gadget properties.
    satisfying_assignments: Truth-table oracle for small formulas.
"""
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple

from cbcore.coloring import EdgeColoring, Partition, canonical_partition, color_blind_partition, \
    verify_distinguishing
from cbcore.errors import FormulaError, InvariantViolationError, PreconditionError
from cbcore.graph import Edge, Graph, induced_subgraph, normalize_edge
from cbcore.solver import enumerate_extensions

logger = logging.getLogger(__name__)

Literal = Tuple[int, bool]
Clause = Tuple[Literal, Literal, Literal]
Assignment = Mapping[int, bool]

TRUE = (2, 1)
FALSE = (3,)

# Largest variable count the truth-table oracle accepts.
ORACLE_VARIABLES = 16

# Clause gadget vertices t_k and their cycle positions.
TERMINALS = (4, 7, 10)


@dataclass(frozen=True)
class CnfFormula:
    """
    A CNF formula with exactly three literals per clause.

    Attributes:
        variable_count (int): n; variables are 1..n.
        clauses (Tuple[Clause, ...]): Each literal is (variable, positive).

    Raises:
        FormulaError: If a clause does not have three literals or a variable is out of range.
    """
    variable_count: int
    clauses: Tuple[Clause, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.variable_count < 0:
            raise FormulaError(f"variable count must be nonnegative, got {self.variable_count}")
        clauses = tuple(tuple((int(i), bool(s)) for i, s in clause) for clause in self.clauses)
        for j, clause in enumerate(clauses, start=1):
            if len(clause) != 3:
                raise FormulaError(f"clause {j} has {len(clause)} literals, expected 3")
            for i, _ in clause:
                if not 1 <= i <= self.variable_count:
                    raise FormulaError(f"clause {j} uses variable {i} outside 1..{self.variable_count}")
        object.__setattr__(self, "clauses", clauses)

    @classmethod
    def from_ints(cls, variable_count: int, clauses: Sequence[Sequence[int]]) -> "CnfFormula":
        """Builds a formula from DIMACS-style signed literals."""
        for clause in clauses:
            if 0 in clause:
                raise FormulaError("literal 0 is not a variable")
        return cls(variable_count, tuple(tuple((abs(x), x > 0) for x in clause) for clause in clauses))

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def to_ints(self) -> List[List[int]]:
        return [[i if positive else -i for i, positive in clause] for clause in self.clauses]

    def literal_values(self, j: int, assignment: Assignment) -> Tuple[bool, ...]:
        """Truth values of the literals of clause j (1-based)."""
        return tuple(assignment[i] == positive for i, positive in self.clauses[j - 1])

    def evaluate(self, assignment: Assignment) -> bool:
        return all(any(self.literal_values(j, assignment)) for j in range(1, self.clause_count + 1))


def parse_dimacs(text: str) -> CnfFormula:
    """
    Parses DIMACS CNF text: `c` comment lines, a `p cnf n m` header, then one clause per line
    terminated by 0.

    Raises:
        FormulaError: For a missing or malformed header, a clause not terminated by 0, a clause
            width other than 3, an out-of-range literal or a clause count that differs from m.
    """
    header = None
    clauses: List[List[int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise FormulaError("duplicate problem line", number)
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormulaError(f"invalid problem line: {line}", number)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError as e:
                raise FormulaError(f"invalid problem line: {line}", number) from e
            continue
        if header is None:
            raise FormulaError("clause before the problem line", number)
        try:
            literals = [int(x) for x in line.split()]
        except ValueError as e:
            raise FormulaError(f"invalid literal in: {line}", number) from e
        if literals[-1] != 0:
            raise FormulaError(f"clause must end with 0: {line}", number)
        clause = literals[:-1]
        if len(clause) != 3:
            raise FormulaError(f"clause has {len(clause)} literals, expected 3", number)
        for x in clause:
            if x == 0 or abs(x) > header[0]:
                raise FormulaError(f"literal {x} outside 1..{header[0]}", number)
        clauses.append(clause)
    if header is None:
        raise FormulaError("missing problem line")
    if len(clauses) != header[1]:
        raise FormulaError(f"header announces {header[1]} clauses, found {len(clauses)}")
    return CnfFormula.from_ints(header[0], clauses)


def format_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.variable_count} {phi.clause_count}"]
    lines.extend(" ".join(str(x) for x in clause) + " 0" for clause in phi.to_ints())
    return "\n".join(lines) + "\n"


def read_dimacs(path: str) -> CnfFormula:
    with open(path, "r") as f:
        return parse_dimacs(f.read())


def write_dimacs(phi: CnfFormula, path: str) -> None:
    with open(path, "w") as f:
        f.write(format_dimacs(phi))


def parse_assignment(text: str, variable_count: int) -> Dict[int, bool]:
    """
    Parses an assignment given as signed literals, e.g. "1 -2 3"; every variable must appear once.

    Raises:
        FormulaError: If a variable is missing, repeated or out of range.
    """
    assignment: Dict[int, bool] = {}
    for token in text.replace(",", " ").split():
        try:
            x = int(token)
        except ValueError as e:
            raise FormulaError(f"invalid literal {token!r}") from e
        if x == 0 or abs(x) > variable_count:
            raise FormulaError(f"literal {x} outside 1..{variable_count}")
        if abs(x) in assignment:
            raise FormulaError(f"variable {abs(x)} assigned twice")
        assignment[abs(x)] = x > 0
    missing = [i for i in range(1, variable_count + 1) if i not in assignment]
    if missing:
        raise FormulaError(f"variables {missing} are not assigned")
    return assignment


def format_assignment(assignment: Assignment) -> str:
    return " ".join(str(i if assignment[i] else -i) for i in sorted(assignment))


def satisfying_assignments(phi: CnfFormula) -> Iterator[Dict[int, bool]]:
    """Yields every satisfying assignment, in binary counting order with x_1 most significant."""
    n = phi.variable_count
    if n > ORACLE_VARIABLES:
        raise PreconditionError("n<=16", f"truth tables are limited to {ORACLE_VARIABLES} variables, got {n}")
    for values in itertools.product((False, True), repeat=n):
        assignment = dict(zip(range(1, n + 1), values))
        if phi.evaluate(assignment):
            yield assignment


def variable_gadget(m: int) -> Tuple[Graph, Dict[str, int]]:
    """
    The variable gadget for m clauses: 24m + 26 vertices named p0.., v1.., r1...
    """
    if m < 0:
        raise PreconditionError("m>=0", f"clause count must be nonnegative, got {m}")
    names: Dict[str, int] = {}
    for y in range(6 * m + 8):
        names[f"p{y}"] = len(names)
    for y in range(1, 6 * m + 7):
        names[f"v{y}"] = len(names)
    for y in range(1, 12 * m + 13):
        names[f"r{y}"] = len(names)
    edges = [(names[f"p{y}"], names[f"p{y + 1}"]) for y in range(6 * m + 7)]
    for y in range(1, 6 * m + 7):
        v = names[f"v{y}"]
        edges.extend([(v, names[f"p{y}"]), (v, names[f"r{2 * y - 1}"]), (v, names[f"r{2 * y}"])])
    return Graph.from_edges(edges, len(names)), names


def clause_gadget() -> Tuple[Graph, Dict[str, int]]:
    """
    The clause gadget: 20 vertices, 21 edges. Besides z1..z3, u1..u14, l4, l7, l10 the names hold
    the aliases t1..t3 for u4, u7, u10 and s1..s3 for l4, l7, l10.
    """
    names: Dict[str, int] = {}
    for z in range(1, 4):
        names[f"z{z}"] = len(names)
    for u in range(1, 15):
        names[f"u{u}"] = len(names)
    for u in TERMINALS:
        names[f"l{u}"] = len(names)
    count = len(names)
    for k, u in enumerate(TERMINALS, start=1):
        names[f"t{k}"] = names[f"u{u}"]
        names[f"s{k}"] = names[f"l{u}"]
    edges = [(names["z1"], names["z2"]), (names["z2"], names["z3"]), (names["z1"], names["z3"]),
             (names["z1"], names["u1"])]
    edges.extend((names[f"u{u}"], names[f"u{u % 14 + 1}"]) for u in range(1, 15))
    edges.extend((names[f"u{u}"], names[f"l{u}"]) for u in TERMINALS)
    return Graph.from_edges(edges, count), names


@dataclass(frozen=True)
class GadgetMap:
    """
    Names of gadget vertices inside G_phi.

    Variable gadget names are `x<i>.p<y>`, `x<i>.v<y>`, `x<i>.r<y>`; clause gadget names are
    `C<j>.<name>` with the names of clause_gadget. Identified names share one vertex.

    Attributes:
        labels (Mapping[str, int]): Name -> vertex of G_phi.
        identifications (Tuple[Tuple[str, str], ...]): (clause name, variable name) pairs merged.
        literal_positions (Tuple[Tuple[Tuple[int, int], ...], ...]): Per clause, (variable, x) for
            each literal, where v_x of that variable is identified with t_k.
    """
    labels: Mapping[str, int]
    identifications: Tuple[Tuple[str, str], ...] = ()
    literal_positions: Tuple[Tuple[Tuple[int, int], ...], ...] = ()

    @classmethod
    def from_labels(cls, labels: Mapping[str, int]) -> "GadgetMap":
        return cls(dict(labels))

    def vertex(self, name: str) -> int:
        try:
            return self.labels[name]
        except KeyError as e:
            raise PreconditionError("label", f"no gadget vertex named {name!r}") from e

    def variable_vertex(self, i: int, name: str) -> int:
        return self.vertex(f"x{i}.{name}")

    def clause_vertex(self, j: int, name: str) -> int:
        return self.vertex(f"C{j}.{name}")

    def names_of(self, vertex: int) -> List[str]:
        return sorted(name for name, v in self.labels.items() if v == vertex)


def _spread_out(choice: Sequence[Tuple[int, int]], fixed: Mapping[int, Set[int]]) -> bool:
    seen: Dict[int, List[int]] = {}
    for i, x in choice:
        if any(abs(x - y) < 2 for y in seen.get(i, []) + sorted(fixed.get(i, ()))):
            return False
        seen.setdefault(i, []).append(x)
    return True


def _literal_positions(j: int, clause: Clause, previous: Mapping[int, Set[int]]) -> Tuple[Tuple[int, int], ...]:
    """
    Chooses v_x for each literal of clause j: 6j+3 (positive) or 6j+4 (negative), then 6j+5 / 6j+6
    and 6j+1 / 6j+2. Two positions of one variable are never adjacent inside the clause, and if
    possible not next to the positions the previous clause gave that variable.
    """
    candidates = [((i, 6 * j + 3), (i, 6 * j + 5), (i, 6 * j + 1)) if positive else
                  ((i, 6 * j + 4), (i, 6 * j + 6), (i, 6 * j + 2)) for i, positive in clause]
    options = list(itertools.product(*candidates))
    for choice in options:
        if _spread_out(choice, previous):
            return choice
    logger.debug("clause %d: a variable sits next to its position in clause %d", j, j - 1)
    return next(choice for choice in options if _spread_out(choice, {}))


def build_reduction(phi: CnfFormula) -> Tuple[Graph, GadgetMap]:
    """
    Builds G_phi. Variable gadgets come first in variable order, then the clause vertices that are
    not identified, clause by clause; the result has n(24m + 26) + 8m vertices.

    Returns:
        Tuple[Graph, GadgetMap]: The graph and the names of its vertices.
    """
    m = phi.clause_count
    labels: Dict[str, int] = {}
    edges: Set[Edge] = set()
    count = 0
    gadget, gadget_names = variable_gadget(m)
    for i in range(1, phi.variable_count + 1):
        for name, v in gadget_names.items():
            labels[f"x{i}.{name}"] = v + count
        edges.update(normalize_edge(u + count, v + count) for u, v in gadget.edges)
        count += gadget.vertex_count

    clause_graph, clause_names = clause_gadget()
    identifications: List[Tuple[str, str]] = []
    all_positions = []
    previous: Dict[int, Set[int]] = {}
    for j, clause in enumerate(phi.clauses, start=1):
        positions = _literal_positions(j, clause, previous)
        all_positions.append(positions)
        previous = {}
        for i, x in positions:
            previous.setdefault(i, set()).add(x)
        local: Dict[int, int] = {}
        for k, (i, x) in enumerate(positions, start=1):
            t = TERMINALS[k - 1]
            pairs = ((f"t{k}", f"v{x}"), (f"u{t - 1}", f"r{2 * x - 1}"), (f"u{t + 1}", f"r{2 * x}"), (f"s{k}", f"p{x}"))
            for clause_name, variable_name in pairs:
                local[clause_names[clause_name]] = labels[f"x{i}.{variable_name}"]
                identifications.append((f"C{j}.{clause_name}", f"x{i}.{variable_name}"))
        for v in clause_graph.vertices:
            if v not in local:
                local[v] = count
                count += 1
        for name, v in clause_names.items():
            labels[f"C{j}.{name}"] = local[v]
        edges.update(normalize_edge(local[u], local[v]) for u, v in clause_graph.edges)

    graph = Graph.from_edges(sorted(edges), count)
    logger.debug("G_phi: n=%d m=%d, %d vertices, %d edges", phi.variable_count, m, graph.vertex_count, graph.edge_count)
    return graph, GadgetMap(labels, tuple(identifications), tuple(all_positions))


def _other(color: int) -> int:
    return 3 - color


def satisfied_clause_coloring(targets: Sequence[Partition]) -> EdgeColoring:
    """
    2-colors the clause gadget so that u4, u7, u10 take the given partitions, at least one of which
    is (2, 1).

    The triangle and z1 u1, u1 u2 are fixed so that u1 gets (3). Walking the 14-cycle, the two
    edges at a 3-vertex keep their color except at the first terminal with target (2, 1), where the
    color switches; along a run of 2-vertices the first keeps the color and the partitions
    alternate from there. This lands on u14 u1 with the color of u1 u2.
    """
    if len(targets) != 3 or any(p not in (TRUE, FALSE) for p in targets):
        raise PreconditionError("targets", "expected three partitions from (2,1) and (3)")
    if TRUE not in targets:
        raise PreconditionError("one-true", "at least one terminal must take (2,1)")
    graph, names = clause_gadget()
    flip_at = TERMINALS[list(targets).index(TRUE)]
    a, b = 1, 2
    colors: Dict[Edge, int] = {}

    def put(x: str, y: str, c: int) -> None:
        colors[normalize_edge(names[x], names[y])] = c

    put("z1", "z2", a)
    put("z2", "z3", a)
    put("z1", "u1", a)
    put("z1", "z3", b)
    put("u1", "u2", a)
    current = a
    run = 0
    for i in range(2, 15):
        nxt = f"u{i % 14 + 1}"
        if i in TERMINALS:
            run = 0
            out = _other(current) if i == flip_at else current
            target = targets[TERMINALS.index(i)]
            leaf = current if target == FALSE else (_other(current) if out == current else current)
            put(f"u{i}", f"l{i}", leaf)
        else:
            run += 1
            out = current if run % 2 == 1 else _other(current)
        put(f"u{i}", nxt, out)
        current = out

    coloring = EdgeColoring(2, colors)
    report = verify_distinguishing(graph, coloring)
    got = tuple(color_blind_partition(graph, coloring, names[f"u{t}"]) for t in TERMINALS)
    if not report.proper or got != tuple(targets):
        raise InvariantViolationError(f"clause coloring for {tuple(targets)} failed: partitions {got}")
    return coloring


def unsatisfied_clause_coloring() -> EdgeColoring:
    """
    3-colors the clause gadget with u4, u7, u10 all at (3); only u14 u1 takes color 3.
    """
    graph, names = clause_gadget()
    ones = [("z1", "z2"), ("z2", "z3"), ("u1", "z1"), ("u2", "u3"), ("u3", "u4"), ("u4", "l4"), ("u4", "u5"),
            ("u5", "u6"), ("u9", "u10"), ("u10", "l10"), ("u10", "u11"), ("u11", "u12")]
    twos = [("z1", "z3"), ("u1", "u2"), ("u6", "u7"), ("u7", "l7"), ("u7", "u8"), ("u8", "u9"), ("u12", "u13"),
            ("u13", "u14")]
    colors = {normalize_edge(names[x], names[y]): 1 for x, y in ones}
    colors.update({normalize_edge(names[x], names[y]): 2 for x, y in twos})
    colors[normalize_edge(names["u14"], names["u1"])] = 3
    coloring = EdgeColoring(3, colors)
    if not verify_distinguishing(graph, coloring).proper:
        raise InvariantViolationError("fallback clause coloring is not distinguishing")
    return coloring


def _extend_variable(gadgets: GadgetMap, i: int, m: int, fixed: Mapping[Edge, int], truth: bool,
                     palette: Sequence[int] = (1, 2)) -> Dict[Edge, int]:
    """
    Colors the free edges of variable gadget i. Sweeps p_1..p_{6m+6}; the state after p_y is the
    color of p_y p_{y+1} and the partition of p_y, and each step picks the free edges at p_y and
    v_y. p_y must differ from p_{y-1} and from v_y; v_1 must read `truth`.
    """
    p = [gadgets.variable_vertex(i, f"p{y}") for y in range(6 * m + 8)]
    target = TRUE if truth else FALSE
    layer: Dict[Tuple[int, Partition], Optional[tuple]] = {(c, (1,)): None for c in palette}
    history = [layer]
    for y in range(1, 6 * m + 7):
        v = gadgets.variable_vertex(i, f"v{y}")
        e_v = normalize_edge(v, p[y])
        e_out = normalize_edge(p[y], p[y + 1])
        e_r = [normalize_edge(v, gadgets.variable_vertex(i, f"r{2 * y - s}")) for s in (1, 0)]
        free = [e for e in [e_v] + e_r + [e_out] if e not in fixed]
        nxt: Dict[Tuple[int, Partition], tuple] = {}
        for state in layer:
            incoming, previous = state
            for colors in itertools.product(palette, repeat=len(free)):
                chosen = dict(zip(free, colors))

                def color(e: Edge) -> int:
                    return chosen[e] if e in chosen else fixed[e]

                at_p = canonical_partition(Counter([incoming, color(e_v), color(e_out)]).values())
                at_v = canonical_partition(Counter([color(e_v)] + [color(e) for e in e_r]).values())
                if at_p == previous or at_p == at_v or (y == 1 and at_v != target):
                    continue
                nxt.setdefault((color(e_out), at_p), (state, chosen))
        if not nxt:
            raise InvariantViolationError(f"variable gadget {i} has no extension at position {y}")
        history.append(nxt)
        layer = nxt

    updates: Dict[Edge, int] = {}
    state = next(iter(layer))
    for y in range(6 * m + 6, 0, -1):
        state, chosen = history[y][state]
        updates.update(chosen)
    updates[normalize_edge(p[0], p[1])] = state[0]
    return updates


def encode_assignment(graph: Graph, phi: CnfFormula, gadgets: GadgetMap, assignment: Assignment) -> EdgeColoring:
    """
    Colors G_phi from a truth assignment.

    Satisfied clauses get the 2-coloring whose terminals read their literal values; unsatisfied
    clauses get the 3-colored fallback. The variable gadgets are then extended with colors 1 and 2
    so that c*(v_1) reads the truth value.

    Returns:
        EdgeColoring: A distinguishing coloring with 2 colors iff the assignment satisfies phi,
        3 colors otherwise.

    Raises:
        PreconditionError: If the assignment is incomplete.
        InvariantViolationError: If the result fails the verifier.
    """
    missing = [i for i in range(1, phi.variable_count + 1) if i not in assignment]
    if missing:
        raise PreconditionError("complete-assignment", f"variables {missing} are not assigned")
    m = phi.clause_count
    _, clause_names = clause_gadget()
    fixed: Dict[Edge, int] = {}
    k = 2
    for j in range(1, m + 1):
        values = phi.literal_values(j, assignment)
        if any(values):
            local = satisfied_clause_coloring([TRUE if value else FALSE for value in values])
        else:
            logger.debug("clause %d is not satisfied, using 3 colors", j)
            local = unsatisfied_clause_coloring()
            k = 3
        vertex_map = {v: gadgets.clause_vertex(j, name) for name, v in clause_names.items()}
        fixed.update(local.relabeled(vertex_map).assignment)
    for i in range(1, phi.variable_count + 1):
        fixed.update(_extend_variable(gadgets, i, m, fixed, assignment[i]))

    coloring = EdgeColoring(k, fixed)
    if not coloring.is_total(graph):
        raise InvariantViolationError("encoded coloring does not cover every edge of G_phi")
    report = verify_distinguishing(graph, coloring)
    if not report.proper:
        raise InvariantViolationError(f"encoded coloring is not distinguishing: {report.violations[0]}")
    return coloring


def decode_assignment(graph: Graph, phi: CnfFormula, gadgets: GadgetMap, coloring: EdgeColoring) -> Dict[int, bool]:
    """
    Reads x_i = (c*(v_1 of gadget i) == (2, 1)) from a distinguishing 2-coloring of G_phi.

    Raises:
        PreconditionError: If the coloring is partial, uses a third color or is not distinguishing.
        InvariantViolationError: If the decoded assignment does not satisfy phi.
    """
    if coloring.colors_used() - {1, 2}:
        raise PreconditionError("k=2", "decoding needs a 2-coloring")
    if not coloring.is_total(graph):
        raise PreconditionError("total", "decoding needs a total coloring")
    report = verify_distinguishing(graph, coloring)
    if not report.proper:
        raise PreconditionError("proper", f"coloring is not distinguishing at {report.violations[0][0]}")
    assignment = {i: color_blind_partition(graph, coloring, gadgets.variable_vertex(i, "v1")) == TRUE
                  for i in range(1, phi.variable_count + 1)}
    if not phi.evaluate(assignment):
        raise InvariantViolationError(f"decoded assignment {format_assignment(assignment)} does not satisfy the formula")
    return assignment


@dataclass(frozen=True)
class ClaimReport:
    """
    Result of an exhaustive gadget check.

    Attributes:
        name (str): What was checked.
        holds (bool): True iff every case passed.
        checked (int): Colorings or cases enumerated.
        cases (Mapping[str, bool]): Per-case outcome, when the check has named cases.
    """
    name: str
    holds: bool
    checked: int
    cases: Mapping[str, bool] = field(default_factory=dict)


def _triple_name(triple: Sequence[Partition]) -> str:
    return "/".join("(" + ",".join(str(x) for x in p) + ")" for p in triple)


def verify_claim1() -> ClaimReport:
    """
    Enumerates every distinguishing 2-coloring of the clause gadget and checks that none has
    u4, u7 and u10 all at (3).
    """
    graph, names = clause_gadget()
    checked = 0
    all_false = 0
    for coloring in enumerate_extensions(graph, EdgeColoring(2), graph.vertices, k=2):
        checked += 1
        if all(color_blind_partition(graph, coloring, names[f"u{t}"]) == FALSE for t in TERMINALS):
            all_false += 1
    report = ClaimReport("clause gadget has a (2,1) terminal", checked > 0 and all_false == 0, checked)
    logger.info("%s: %s over %d colorings", report.name, "holds" if report.holds else "FAILS", checked)
    return report


def realizable(targets: Sequence[Partition]) -> bool:
    """True iff some distinguishing 2-coloring of the clause gadget gives u4, u7, u10 these partitions."""
    graph, names = clause_gadget()
    forbidden = {names[f"u{t}"]: {TRUE, FALSE} - {p} for t, p in zip(TERMINALS, targets)}
    found = next(enumerate_extensions(graph, EdgeColoring(2), graph.vertices, k=2, forbidden=forbidden), None)
    return found is not None


def verify_claim2() -> ClaimReport:
    """
    Checks that each of the 7 terminal triples with a (2,1) is realized, both by enumeration and by
    satisfied_clause_coloring, and that (3)/(3)/(3) is not.
    """
    cases: Dict[str, bool] = {}
    for triple in itertools.product((TRUE, FALSE), repeat=3):
        if TRUE in triple:
            ok = realizable(triple)
            try:
                satisfied_clause_coloring(triple)
            except InvariantViolationError:
                ok = False
        else:
            ok = not realizable(triple)
        cases[_triple_name(triple)] = ok
    report = ClaimReport("clause gadget realizes every triple with a (2,1)", all(cases.values()), len(cases), cases)
    logger.info("%s: %s", report.name, "holds" if report.holds else "FAILS")
    return report


def claim3_window(m: int = 2, j: int = 1) -> Tuple[Graph, Dict[str, int]]:
    """
    The subgraph D of a variable gadget induced by p_{6j+1}..p_{6j+7}, v_{6j+3}, v_{6j+4} and their
    neighbors, with names carried over.
    """
    if not 1 <= j <= m:
        raise PreconditionError("1<=j<=m", f"window {j} outside 1..{m}")
    gadget, names = variable_gadget(m)
    core = [names[f"p{y}"] for y in range(6 * j + 1, 6 * j + 8)] + [names[f"v{6 * j + 3}"], names[f"v{6 * j + 4}"]]
    keep = set(core)
    for v in core:
        keep.update(gadget.neighbors(v))
    window, old_to_new = induced_subgraph(gadget, keep)
    return window, {name: old_to_new[v] for name, v in names.items() if v in old_to_new}


def verify_claim3(m: int = 2, j: int = 1) -> ClaimReport:
    """
    For t in {3, 4}, enumerates every 2-coloring of the edges at p_{6j+1} and v_{6j+t} with
    c*(p_{6j+1}) != c*(v_{6j+3}) (t = 3) or c*(p_{6j+1}) = c*(v_{6j+4}) (t = 4), and checks that
    each extends to a 2-coloring of D whose partitions are a proper vertex coloring of D.
    """
    window, names = claim3_window(m, j)
    start = names[f"p{6 * j + 1}"]
    cases: Dict[str, bool] = {}
    checked = 0
    for t in (3, 4):
        terminal = names[f"v{6 * j + t}"]
        boundary = sorted(set(window.incident_edges(start)) | set(window.incident_edges(terminal)))
        failures = 0
        for colors in itertools.product((1, 2), repeat=len(boundary)):
            partial = EdgeColoring(2, dict(zip(boundary, colors)))
            at_start = color_blind_partition(window, partial, start)
            at_terminal = color_blind_partition(window, partial, terminal)
            if (t == 3 and at_start == at_terminal) or (t == 4 and at_start != at_terminal):
                continue
            checked += 1
            if next(enumerate_extensions(window, partial, window.vertices, k=2), None) is None:
                failures += 1
        cases[f"t={t}"] = failures == 0
    report = ClaimReport("variable gadget windows extend", all(cases.values()) and checked > 0, checked, cases)
    logger.info("%s: %s over %d boundary colorings", report.name, "holds" if report.holds else "FAILS", checked)
    return report
