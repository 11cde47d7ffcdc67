"""
cli.py

This module provides the `dalkit` command line.

    dalkit [-v|-q] [--config PATH] <command> ...

Commands:
    dal           Computes dal(G) up to k_max, or proves it infinite.
    color         Colors a graph with one of the constructive methods.
    verify        Re-verifies a coloring document against its graph.
    reduce-cnf    Builds G_phi from a DIMACS formula, optionally encoding an assignment.
    decode        Reads a satisfying assignment back from a 2-coloring of G_phi.
    check-config  Checks configurations for reducibility.
    hypergraph    2-colors a hypergraph and emits its incidence graph and coloring.
    gen           Writes a graph from one of the generator families.

Exit codes follow ExitCode: 0 success, 1 a negative answer, 2 dal proven infinite, 3 bad input or a
failed precondition. Results go to standard output, logs to standard error.
"""
import argparse
import logging
import sys
from enum import IntEnum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from cbcore.coloring import EdgeColoring
from cbcore.errors import DalkitError, InvariantViolationError, PreconditionError
from cbcore.graph import Graph, format_graph, read_graph, write_graph
from cbcore.solver import DalOutcome, SearchConfig, compute_dal
from cbcore.structure import InfiniteCertificate, is_connected, is_cycle_of_diamonds, is_tree
from dalkit import generators
from dalkit.cactus import analyze_cactus, color_cactus, color_cycle_graph, color_tree
from dalkit.config import Settings, load_settings
from dalkit.cubic import CubicValidation, color_cubic, validate_cubic_input
from dalkit.documents import build_document, check_document, format_coloring_document, format_dal_result, \
    format_label_map, format_refusal, format_report, read_coloring_document, read_configuration, \
    read_hypergraph, read_label_map, render_dal_result, render_document, render_report, write_label_map
from dalkit.hypergraph import bipartition, characterize_dal2_bipartite, dal2_from_hypergraph_coloring, \
    incidence_graph, two_color
from dalkit.reducibility import builtin_configuration, builtin_configurations, check_reducible
from dalkit.sat_reduction import GadgetMap, build_reduction, clause_gadget, decode_assignment, encode_assignment, \
    format_assignment, parse_assignment, read_dimacs, satisfying_assignments, variable_gadget

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    SUCCESS = 0
    NEGATIVE = 1
    INFINITE = 2
    ERROR = 3


METHODS = ("exact", "tree", "cycle", "cactus", "cubic", "bipartite2")


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with ExitCode.ERROR; argparse's own code 2 means dal = infinity here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(ExitCode.ERROR, f"{self.prog}: error: {message}\n")


def _emit(text: str, path: Optional[str] = None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as f:
            f.write(text)


def cmd_dal(args: argparse.Namespace, settings: Settings) -> ExitCode:
    graph = read_graph(args.graph)
    settings = settings.with_overrides(k_max=args.k_max, node_budget=args.node_budget, jobs=args.jobs,
                                       pretty=args.pretty or None)
    result = compute_dal(graph, settings.k_max, SearchConfig(node_budget=settings.node_budget), jobs=settings.jobs)
    _emit(render_dal_result(graph, result) if settings.pretty else format_dal_result(graph, result))
    return {
        DalOutcome.FINITE: ExitCode.SUCCESS,
        DalOutcome.NO_COLORING_UP_TO: ExitCode.NEGATIVE,
        DalOutcome.PROVEN_INFINITE: ExitCode.INFINITE,
    }[result.outcome]


Colored = Tuple[Optional[EdgeColoring], Optional[InfiniteCertificate], Optional[str]]


def _color(graph: Graph, args: argparse.Namespace, settings: Settings) -> Colored:
    """Returns (coloring, certificate, reason); exactly one is set."""
    method = args.method
    if method == "tree":
        return color_tree(graph, root=args.seed_vertex if args.seed_vertex is not None else 0), None, None
    if method == "cubic":
        outcome = color_cubic(graph)
        return outcome.coloring, outcome.certificate, None
    if method == "bipartite2":
        characterization = characterize_dal2_bipartite(graph)
        if characterization.holds:
            return characterization.witness, None, None
        return None, None, "neither derived hypergraph is 2-colorable"
    if method == "cycle":
        result = color_cycle_graph(graph)
    elif method == "cactus":
        result = color_cactus(graph, colors=args.colors or 3, seed_vertex=args.seed_vertex)
    else:
        k_max = settings.with_overrides(k_max=args.k_max).k_max
        result = compute_dal(graph, k_max, SearchConfig(node_budget=settings.node_budget), jobs=settings.jobs)
    if result.outcome is DalOutcome.FINITE:
        return result.witness, None, None
    if result.outcome is DalOutcome.PROVEN_INFINITE:
        return None, result.certificate, None
    return None, None, f"no distinguishing coloring with at most {result.k_max} colors"


def cmd_color(args: argparse.Namespace, settings: Settings) -> ExitCode:
    graph = read_graph(args.graph)
    settings = settings.with_overrides(pretty=args.pretty or None)
    try:
        coloring, certificate, reason = _color(graph, args, settings)
    except PreconditionError as e:
        _emit(format_refusal(args.method, hypothesis=e.hypothesis, message=str(e)), args.output)
        return ExitCode.ERROR
    if certificate is not None:
        _emit(format_refusal(args.method, certificate=certificate, message=certificate.describe()), args.output)
        return ExitCode.INFINITE
    if coloring is None:
        _emit(format_refusal(args.method, hypothesis="not-found", message=reason), args.output)
        return ExitCode.NEGATIVE
    document = build_document(graph, coloring, args.method)
    _emit(render_document(document) if settings.pretty else format_coloring_document(document), args.output)
    return ExitCode.SUCCESS if document.proper else ExitCode.NEGATIVE


def cmd_verify(args: argparse.Namespace, settings: Settings) -> ExitCode:
    graph = read_graph(args.graph)
    report = check_document(graph, read_coloring_document(args.coloring))
    pretty = settings.with_overrides(pretty=args.pretty or None).pretty
    _emit(render_report(report) if pretty else format_report(report))
    return ExitCode.SUCCESS if report.proper else ExitCode.NEGATIVE


def cmd_reduce_cnf(args: argparse.Namespace, settings: Settings) -> ExitCode:
    phi = read_dimacs(args.cnf)
    graph, gadgets = build_reduction(phi)
    write_graph(graph, args.output, comment=f"reduction of {args.cnf}: n={phi.variable_count} m={phi.clause_count}")
    logger.info("wrote %d vertices and %d edges to %s", graph.vertex_count, graph.edge_count, args.output)
    if args.labels:
        write_label_map(gadgets.labels, args.labels)
    code = ExitCode.SUCCESS
    if args.assignment is not None:
        assignment = parse_assignment(args.assignment, phi.variable_count)
        coloring = encode_assignment(graph, phi, gadgets, assignment)
        document = build_document(graph, coloring, "sat-encode", labels=args.labels)
        _emit(format_coloring_document(document), args.coloring_out)
        if not phi.evaluate(assignment):
            code = ExitCode.NEGATIVE
    if args.check:
        first = next(satisfying_assignments(phi), None)
        if first is None:
            _emit("satisfiable: false\n")
            return ExitCode.NEGATIVE
        coloring = encode_assignment(graph, phi, gadgets, first)
        decoded = decode_assignment(graph, phi, gadgets, coloring)
        if not phi.evaluate(decoded):
            raise InvariantViolationError("decoded assignment does not satisfy the formula")
        _emit(f"satisfiable: true\nassignment: {format_assignment(first)}\n")
    return code


def cmd_decode(args: argparse.Namespace, settings: Settings) -> ExitCode:
    phi = read_dimacs(args.cnf)
    graph = read_graph(args.graph)
    gadgets = GadgetMap.from_labels(read_label_map(args.labels))
    document = read_coloring_document(args.coloring, graph)
    assignment = decode_assignment(graph, phi, gadgets, document.coloring)
    _emit(f"assignment: {format_assignment(assignment)}\n")
    return ExitCode.SUCCESS


def cmd_check_config(args: argparse.Namespace, settings: Settings) -> ExitCode:
    if args.all_builtin:
        configs = builtin_configurations()
    elif args.builtin:
        configs = (builtin_configuration(args.builtin),)
    elif args.file:
        configs = (read_configuration(args.file),)
    else:
        raise PreconditionError("config", "give a configuration file, --builtin NAME or --all-builtin")
    jobs = settings.with_overrides(jobs=args.jobs).jobs
    code = ExitCode.SUCCESS
    lines: List[str] = []
    for config in configs:
        report = check_reducible(config, jobs=jobs)
        verdict = "reducible" if report.reducible else "NOT reducible"
        lines.append(f"{report.name}: {verdict} ({report.pairs_checked} potential pairs, "
                     f"{len(report.failures)} failures)")
        lines.extend(f"  failing pair {pair.describe(config)}" for pair in report.failures)
        if not report.reducible:
            code = ExitCode.NEGATIVE
    _emit("\n".join(lines) + "\n")
    return code


def cmd_hypergraph(args: argparse.Namespace, settings: Settings) -> ExitCode:
    hypergraph = read_hypergraph(args.file)
    if args.incidence_out:
        graph, _ = incidence_graph(hypergraph)
        write_graph(graph, args.incidence_out, comment=f"incidence graph of {args.file}")
    coloring = two_color(hypergraph)
    if coloring is None:
        _emit("2-colorable: false\n")
        return ExitCode.NEGATIVE
    _emit("2-colorable: true\ncolors: " + " ".join(str(c) for c in coloring.colors) + "\n")
    if args.coloring_out:
        graph, _ = incidence_graph(hypergraph)
        document = build_document(graph, dal2_from_hypergraph_coloring(hypergraph, coloring), "hypergraph")
        _emit(format_coloring_document(document), args.coloring_out)
    return ExitCode.SUCCESS


def _ints(family: str, params: Sequence[str], count: Optional[int]) -> List[int]:
    if count is not None and len(params) != count:
        raise PreconditionError("params", f"{family} takes {count} integer parameter(s), got {len(params)}")
    try:
        return [int(p) for p in params]
    except ValueError as e:
        raise PreconditionError("params", f"{family} parameters must be integers, got {list(params)}") from e


def _fixed(family: str, params: Sequence[str], build: Callable[[], Any]) -> Any:
    _ints(family, params, 0)
    return build()


Generated = Tuple[Graph, Optional[Dict[str, int]]]

GEN_FAMILIES: Dict[str, Callable[[Sequence[str], argparse.Namespace], Generated]] = {
    "cycle": lambda p, a: (generators.cycle_graph(*_ints("cycle", p, 1)), None),
    "path": lambda p, a: (generators.path_graph(*_ints("path", p, 1)), None),
    "star": lambda p, a: (generators.star_graph(*_ints("star", p, 1)), None),
    "tree": lambda p, a: (generators.random_tree(*_ints("tree", p, 1), seed=a.seed), None),
    "diamond-cycle": lambda p, a: (generators.diamond_cycle(*_ints("diamond-cycle", p, 1)), None),
    "joined-diamonds": lambda p, a: (_fixed("joined-diamonds", p, generators.joined_diamonds), None),
    "hairy-cycle": lambda p, a: (generators.hairy_cycle(len(p), _ints("hairy-cycle", p, None)), None),
    "cactus": lambda p, a: (generators.random_cactus(*_ints("cactus", p, 1), seed=a.seed,
                                                     two_color_hypotheses=a.two_color_hypotheses), None),
    "triangle-saturated": lambda p, a: (
        generators.random_triangle_saturated_cubic(*_ints("triangle-saturated", p, 1), seed=a.seed), None),
    "cubic-tree": lambda p, a: (generators.random_cubic_tree(*_ints("cubic-tree", p, 1), seed=a.seed), None),
    "base-case": lambda p, a: (generators.base_case_graph(p[0] if len(p) == 1 else ""), None),
    "clause-gadget": lambda p, a: _fixed("clause-gadget", p, clause_gadget),
    "variable-gadget": lambda p, a: variable_gadget(*_ints("variable-gadget", p, 1)),
    "heawood": lambda p, a: (_fixed("heawood", p, generators.heawood_graph), None),
    "cube": lambda p, a: (_fixed("cube", p, generators.cube_graph), None),
    "k33": lambda p, a: (_fixed("k33", p, generators.k33_graph), None),
    "regular-bipartite": lambda p, a: (
        generators.random_regular_bipartite(*_ints("regular-bipartite", p, 2), seed=a.seed), None),
}


def check_family(family: str, graph: Graph, params: Sequence[str]) -> None:
    """
    Checks the structural invariant of a generated family before it is written.

    Raises:
        InvariantViolationError: If the graph does not belong to its family.
    """
    ok = True
    if family in ("tree", "path", "star", "cubic-tree", "variable-gadget"):
        ok = is_tree(graph)
    if family == "cycle":
        ok = graph.is_regular(2) and is_connected(graph)
    elif family == "diamond-cycle":
        ok = graph.is_regular(3) and is_cycle_of_diamonds(graph) == int(params[0])
    elif family == "cactus":
        ok = analyze_cactus(graph).is_cactus
    elif family == "triangle-saturated":
        ok = validate_cubic_input(graph) == CubicValidation.ALL and graph.is_regular(3)
    elif family == "clause-gadget":
        ok = graph.vertex_count == 20 and graph.edge_count == 21
    elif family == "variable-gadget":
        ok = ok and graph.vertex_count == 24 * int(params[0]) + 26
    elif family in ("heawood", "cube", "k33", "regular-bipartite"):
        bipartition(graph)
        ok = graph.vertex_count > 0 and graph.is_regular(graph.degree(0))
    if not ok:
        raise InvariantViolationError(f"generated graph is not a valid {family} instance")


def cmd_gen(args: argparse.Namespace, settings: Settings) -> ExitCode:
    graph, labels = GEN_FAMILIES[args.family](args.params, args)
    check_family(args.family, graph, args.params)
    comment = " ".join([args.family] + list(args.params) + ([f"seed={args.seed}"] if args.seed is not None else []))
    _emit(format_graph(graph, comment), args.output)
    if args.labels:
        if labels is None:
            raise PreconditionError("labels", f"{args.family} has no vertex names")
        _emit(format_label_map(labels), args.labels)
    return ExitCode.SUCCESS


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dalkit", description="Color-blind distinguishing edge-colorings.")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="count", default=0, help="log more (repeatable)")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="log errors only")
    parser.add_argument("--config", help="settings file (default: $DALKIT_CONFIG or ~/.dalkitrc)")
    commands = parser.add_subparsers(dest="command", metavar="<command>")
    commands.required = True

    p = commands.add_parser("dal", help="compute dal(G)")
    p.add_argument("graph")
    p.add_argument("--k-max", type=int)
    p.add_argument("--node-budget", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(handler=cmd_dal)

    p = commands.add_parser("color", help="color a graph with a constructive method")
    p.add_argument("graph")
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("--colors", type=int, choices=(2, 3))
    p.add_argument("--seed-vertex", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_color)

    p = commands.add_parser("verify", help="verify a coloring document")
    p.add_argument("graph")
    p.add_argument("coloring")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(handler=cmd_verify)

    p = commands.add_parser("reduce-cnf", help="build G_phi from a DIMACS 3-CNF formula")
    p.add_argument("cnf")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--labels")
    p.add_argument("--assignment", help='signed literals, e.g. "1 -2 3"')
    p.add_argument("--coloring-out")
    p.add_argument("--check", action="store_true", help="find a satisfying assignment and round-trip it")
    p.set_defaults(handler=cmd_reduce_cnf)

    p = commands.add_parser("decode", help="read an assignment from a 2-coloring of G_phi")
    p.add_argument("cnf")
    p.add_argument("graph")
    p.add_argument("labels")
    p.add_argument("coloring")
    p.set_defaults(handler=cmd_decode)

    p = commands.add_parser("check-config", help="check configurations for reducibility")
    source = p.add_mutually_exclusive_group()
    source.add_argument("file", nargs="?")
    source.add_argument("--builtin", choices=[c.name for c in builtin_configurations()])
    source.add_argument("--all-builtin", action="store_true")
    p.add_argument("--jobs", type=int)
    p.set_defaults(handler=cmd_check_config)

    p = commands.add_parser("hypergraph", help="2-color a hypergraph")
    p.add_argument("file")
    p.add_argument("--incidence-out")
    p.add_argument("--coloring-out")
    p.set_defaults(handler=cmd_hypergraph)

    p = commands.add_parser("gen", help="generate a graph")
    p.add_argument("family", choices=sorted(GEN_FAMILIES))
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int)
    p.add_argument("--two-color-hypotheses", action="store_true", help="cactus: repair for 2 colors")
    p.add_argument("--labels", help="gadget families: write vertex names here")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=cmd_gen)
    return parser


def _log_level(args: argparse.Namespace, settings: Settings) -> int:
    if args.verbose >= 2:
        return logging.DEBUG
    if args.verbose == 1:
        return logging.INFO
    if args.quiet:
        return logging.ERROR
    return getattr(logging, settings.log_level)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_settings(args.config)
    except DalkitError as e:
        print(f"dalkit: error: {e}", file=sys.stderr)
        return ExitCode.ERROR
    logging.basicConfig(level=_log_level(args, settings), format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)
    try:
        return int(args.handler(args, settings))
    except (DalkitError, OSError) as e:
        logger.debug("command %s failed", args.command, exc_info=True)
        print(f"dalkit: error: {e}", file=sys.stderr)
        return ExitCode.ERROR
