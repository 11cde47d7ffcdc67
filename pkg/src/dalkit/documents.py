"""
documents.py

This module provides the text formats the command line reads and writes besides graphs and DIMACS.

Classes:
    ColoringDocument: A total edge-coloring with its partitions, verification flag and provenance.

Functions:
    build_document: ColoringDocument for a coloring of a graph.
    parse_coloring_document, format_coloring_document: Coloring document text.
    check_document: Recomputes a document against its graph.
    read_coloring_document, write_coloring_document: File access.
    parse_label_map, format_label_map, read_label_map, write_label_map: Label map sidecars.
    parse_hypergraph, format_hypergraph, read_hypergraph, write_hypergraph: Hypergraph files.
    parse_configuration, format_configuration, read_configuration: Configuration files.
    format_dal_result, parse_dal_result: DalResult documents.
    format_report, format_refusal: Verification results and declined constructions.
    render_document, render_dal_result, render_report: Aligned tables for --pretty.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from cbcore.coloring import EdgeColoring, Partition, VerificationReport, format_partition, verify_distinguishing
from cbcore.errors import DocumentIntegrityError, GraphFormatError
from cbcore.graph import Edge, Graph, normalize_edge
from cbcore.solver import DalOutcome, DalResult
from cbcore.structure import InfiniteCertificate, InfiniteKind
from dalkit.hypergraph import Hypergraph
from dalkit.reducibility import Configuration

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ColoringDocument:
    """
    Attributes:
        color_count (int): k.
        colors (Mapping[Edge, int]): Edge -> color, for every edge of the graph.
        partitions (Mapping[int, Partition]): Vertex -> c*(v) as stored.
        proper (bool): Stored verification flag.
        method (str): Tag of the method that produced the coloring.
        seed (Optional[int]): Random seed, if any.
        labels (Optional[str]): Path of a label map sidecar, if any.
    """
    color_count: int
    colors: Mapping[Edge, int]
    partitions: Mapping[int, Partition] = field(default_factory=dict)
    proper: bool = True
    method: str = "exact"
    seed: Optional[int] = None
    labels: Optional[str] = None

    @property
    def coloring(self) -> EdgeColoring:
        return EdgeColoring(self.color_count, dict(self.colors))


def build_document(graph: Graph, coloring: EdgeColoring, method: str, seed: Optional[int] = None,
                   labels: Optional[str] = None) -> ColoringDocument:
    """Computes partitions and the verification flag for a total coloring."""
    report = verify_distinguishing(graph, coloring)
    return ColoringDocument(coloring.color_count, dict(coloring.assignment), dict(report.partitions),
                            report.proper, method, seed, labels)


def _parse_partition(token: str, number: int) -> Partition:
    if token == "-":
        return ()
    try:
        return tuple(int(x) for x in token.split(","))
    except ValueError as e:
        raise GraphFormatError(f"invalid partition {token!r}", number) from e


def _parse_bool(value: str, number: int) -> bool:
    if value.lower() not in ("true", "false"):
        raise GraphFormatError(f"expected true or false, got {value!r}", number)
    return value.lower() == "true"


def _parse_int(value: str, number: int) -> int:
    try:
        return int(value)
    except ValueError as e:
        raise GraphFormatError(f"expected an integer, got {value!r}", number) from e


def parse_coloring_document(text: str) -> ColoringDocument:
    """
    Parses a coloring document: `key: value` lines (k, method, proper, seed, labels), then an
    `edges:` section of `u v color` lines and a `partitions:` section of `v p1,p2,...` lines.

    Raises:
        GraphFormatError: With the line number of the first malformed line.
    """
    header: Dict[str, str] = {}
    colors: Dict[Edge, int] = {}
    stored: Dict[int, Partition] = {}
    section = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("edges:", "partitions:"):
            section = line[:-1]
            continue
        if section is None:
            if ":" not in line:
                raise GraphFormatError(f"expected 'key: value', got {line!r}", number)
            key, value = (part.strip() for part in line.split(":", 1))
            if key not in ("k", "method", "proper", "seed", "labels"):
                raise GraphFormatError(f"unknown key {key!r}", number)
            header[key] = value
            if key in ("k", "seed"):
                _parse_int(value, number)
            elif key == "proper":
                _parse_bool(value, number)
            continue
        parts = line.split()
        if section == "edges":
            if len(parts) != 3:
                raise GraphFormatError(f"expected 'u v color', got {line!r}", number)
            u, v, c = (_parse_int(x, number) for x in parts)
            if u == v:
                raise GraphFormatError(f"self-loop at {u}", number)
            edge = normalize_edge(u, v)
            if edge in colors:
                raise GraphFormatError(f"edge ({u}, {v}) listed twice", number)
            colors[edge] = c
        else:
            if len(parts) != 2:
                raise GraphFormatError(f"expected 'v partition', got {line!r}", number)
            stored[_parse_int(parts[0], number)] = _parse_partition(parts[1], number)
    if "k" not in header:
        raise GraphFormatError("missing 'k:' line")
    k = int(header["k"])
    bad = [(e, c) for e, c in colors.items() if not 1 <= c <= k]
    if bad:
        raise GraphFormatError(f"edge {bad[0][0]} has color {bad[0][1]} outside 1..{k}")
    return ColoringDocument(
        color_count=k,
        colors=colors,
        partitions=stored,
        proper=header.get("proper", "true").lower() == "true",
        method=header.get("method", "exact"),
        seed=int(header["seed"]) if "seed" in header else None,
        labels=header.get("labels"))


def format_coloring_document(document: ColoringDocument) -> str:
    lines = [f"k: {document.color_count}", f"method: {document.method}",
             f"proper: {'true' if document.proper else 'false'}"]
    if document.seed is not None:
        lines.append(f"seed: {document.seed}")
    if document.labels is not None:
        lines.append(f"labels: {document.labels}")
    lines.append("edges:")
    lines.extend(f"{u} {v} {c}" for (u, v), c in sorted(document.colors.items()))
    lines.append("partitions:")
    lines.extend(f"{v} {','.join(str(x) for x in p) or '-'}" for v, p in sorted(document.partitions.items()))
    return "\n".join(lines) + "\n"


def check_document(graph: Graph, document: ColoringDocument) -> VerificationReport:
    """
    Checks a document against its graph and returns the recomputed verification.

    Raises:
        DocumentIntegrityError: If the edges differ from the graph's, or a stored partition or the
            stored proper flag disagrees with the recomputation.
    """
    listed = set(document.colors)
    if listed != graph.edge_set:
        extra = sorted(listed - graph.edge_set)
        missing = sorted(graph.edge_set - listed)
        raise DocumentIntegrityError(f"document edges do not match the graph (extra {extra[:3]}, missing {missing[:3]})")
    report = verify_distinguishing(graph, document.coloring)
    for v, p in document.partitions.items():
        if report.partitions.get(v) != p:
            raise DocumentIntegrityError(
                f"stored partition {format_partition(p)} at {v} differs from {format_partition(report.partitions.get(v, ()))}")
    if document.proper != report.proper:
        raise DocumentIntegrityError(f"stored proper flag {document.proper} differs from the verifier")
    return report


def read_coloring_document(path: str, graph: Optional[Graph] = None) -> ColoringDocument:
    with open(path, "r") as f:
        document = parse_coloring_document(f.read())
    if graph is not None:
        check_document(graph, document)
    return document


def write_coloring_document(document: ColoringDocument, path: str) -> None:
    with open(path, "w") as f:
        f.write(format_coloring_document(document))


def parse_label_map(text: str) -> Dict[str, int]:
    """Parses `name id` lines; `#` starts a comment."""
    labels: Dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"expected 'name id', got {line!r}", number)
        if parts[0] in labels:
            raise GraphFormatError(f"label {parts[0]!r} listed twice", number)
        labels[parts[0]] = _parse_int(parts[1], number)
    return labels


def format_label_map(labels: Mapping[str, int]) -> str:
    return "".join(f"{name} {v}\n" for name, v in sorted(labels.items(), key=lambda item: (item[1], item[0])))


def read_label_map(path: str) -> Dict[str, int]:
    with open(path, "r") as f:
        return parse_label_map(f.read())


def write_label_map(labels: Mapping[str, int], path: str) -> None:
    with open(path, "w") as f:
        f.write(format_label_map(labels))


def _data_lines(text: str) -> List[Tuple[int, List[str]]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line.split()))
    return lines


def parse_hypergraph(text: str) -> Hypergraph:
    """
    Parses `n k m` followed by m lines of k vertex ids.

    Raises:
        GraphFormatError: With the line number of the first malformed line.
    """
    lines = _data_lines(text)
    if not lines:
        raise GraphFormatError("empty hypergraph file")
    number, header = lines[0]
    if len(header) != 3:
        raise GraphFormatError("header must be 'n k m'", number)
    n, k, m = (_parse_int(x, number) for x in header)
    if len(lines) - 1 != m:
        raise GraphFormatError(f"header announces {m} edges, found {len(lines) - 1}")
    edges = []
    seen = set()
    for number, parts in lines[1:]:
        if len(parts) != k:
            raise GraphFormatError(f"edge has {len(parts)} vertices, expected {k}", number)
        edge = tuple(sorted(_parse_int(x, number) for x in parts))
        if any(not 0 <= v < n for v in edge):
            raise GraphFormatError(f"vertex outside 0..{n - 1}", number)
        if len(set(edge)) != k:
            raise GraphFormatError("edge repeats a vertex", number)
        if edge in seen:
            raise GraphFormatError(f"duplicate edge {edge}", number)
        seen.add(edge)
        edges.append(edge)
    return Hypergraph(n, tuple(edges))


def format_hypergraph(hypergraph: Hypergraph) -> str:
    k = hypergraph.uniformity() or 0
    lines = [f"{hypergraph.vertex_count} {k} {hypergraph.edge_count}"]
    lines.extend(" ".join(str(v) for v in e) for e in hypergraph.edges)
    return "\n".join(lines) + "\n"


def read_hypergraph(path: str) -> Hypergraph:
    with open(path, "r") as f:
        return parse_hypergraph(f.read())


def write_hypergraph(hypergraph: Hypergraph, path: str) -> None:
    with open(path, "w") as f:
        f.write(format_hypergraph(hypergraph))


def _name_pair(parts: List[str], number: int) -> Tuple[str, str]:
    if len(parts) != 2:
        raise GraphFormatError(f"expected a pair of names, got {' '.join(parts)!r}", number)
    return parts[0], parts[1]


def parse_configuration(text: str) -> Configuration:
    """
    Parses `name: <str>`, `H:` followed by name pairs, `D: a b c ...`, `M:` followed by name
    pairs and an optional `A:` followed by `name p1,p2,...` side conditions. S is derived from H
    and D.

    Raises:
        GraphFormatError: For unknown keys or malformed pairs.
        StructuralViolationError: If D or A name a vertex missing from H.
    """
    name = None
    edges: List[Tuple[str, str]] = []
    interior: List[str] = []
    matching: List[Tuple[str, str]] = []
    avoid: List[Tuple[str, Partition]] = []
    section = None
    for number, parts in _data_lines(text):
        head = parts[0]
        if head.endswith(":"):
            key = head[:-1]
            if key == "name":
                name = " ".join(parts[1:])
                section = None
            elif key == "D":
                interior.extend(parts[1:])
                section = "D"
            elif key in ("H", "M", "A"):
                section = key
                if len(parts) > 1:
                    raise GraphFormatError(f"'{key}:' must stand on its own line", number)
            else:
                raise GraphFormatError(f"unknown key {key!r}", number)
            continue
        if section == "H":
            edges.append(_name_pair(parts, number))
        elif section == "M":
            matching.append(_name_pair(parts, number))
        elif section == "A":
            vertex, token = _name_pair(parts, number)
            avoid.append((vertex, _parse_partition(token, number)))
        elif section == "D":
            interior.extend(parts)
        else:
            raise GraphFormatError(f"line outside any section: {' '.join(parts)!r}", number)
    if name is None:
        raise GraphFormatError("missing 'name:' line")
    return Configuration.from_names(name, edges, interior, matching, avoid)


def format_configuration(config: Configuration) -> str:
    names = config.names
    lines = [f"name: {config.name}", "H:"]
    lines.extend(f"{names[u]} {names[v]}" for u, v in config.pattern.edges)
    lines.append("D: " + " ".join(names[v] for v in sorted(config.interior)))
    lines.append("M:")
    lines.extend(f"{names[u]} {names[v]}" for u, v in config.matching)
    if config.avoid:
        lines.append("A:")
        lines.extend(f"{names[x]} {','.join(str(c) for c in p)}" for x, p in config.avoid)
    return "\n".join(lines) + "\n"


def read_configuration(path: str) -> Configuration:
    with open(path, "r") as f:
        return parse_configuration(f.read())


def format_dal_result(graph: Graph, result: DalResult, method: str = "exact") -> str:
    """
    `outcome:` first, then `k_max:` or `certificate: <kind> <vertices>`; a finite result carries
    its witness as an embedded coloring document.
    """
    lines = [f"outcome: {result.outcome.value}"]
    if result.outcome is DalOutcome.NO_COLORING_UP_TO:
        lines.append(f"k_max: {result.k_max}")
    elif result.outcome is DalOutcome.PROVEN_INFINITE:
        certificate = result.certificate
        text = f"certificate: {certificate.kind.value} " + ",".join(str(v) for v in sorted(certificate.component))
        if certificate.diamonds is not None:
            text += f" {certificate.diamonds}"
        lines.append(text)
    head = "\n".join(lines) + "\n"
    if result.outcome is DalOutcome.FINITE:
        return head + format_coloring_document(build_document(graph, result.witness, method))
    return head


def parse_dal_result(text: str) -> DalResult:
    """
    Parses a DalResult document.

    Raises:
        GraphFormatError: For an unknown outcome or certificate kind.
    """
    lines = text.splitlines()
    first = next((i for i, line in enumerate(lines) if line.strip()), None)
    if first is None or not lines[first].startswith("outcome:"):
        raise GraphFormatError("missing 'outcome:' line")
    value = lines[first].split(":", 1)[1].strip()
    try:
        outcome = DalOutcome(value)
    except ValueError as e:
        raise GraphFormatError(f"unknown outcome {value!r}", first + 1) from e
    rest = "\n".join(lines[first + 1:])
    if outcome is DalOutcome.FINITE:
        document = parse_coloring_document(rest)
        return DalResult.finite(document.color_count, document.coloring)
    for number, parts in _data_lines(rest):
        if outcome is DalOutcome.NO_COLORING_UP_TO and parts[0] == "k_max:" and len(parts) == 2:
            return DalResult.no_coloring_up_to(_parse_int(parts[1], number + first + 1))
        if outcome is DalOutcome.PROVEN_INFINITE and parts[0] == "certificate:" and len(parts) in (3, 4):
            try:
                kind = InfiniteKind(parts[1])
            except ValueError as e:
                raise GraphFormatError(f"unknown certificate kind {parts[1]!r}", number + first + 1) from e
            component = frozenset(_parse_int(v, number + first + 1) for v in parts[2].split(","))
            diamonds = _parse_int(parts[3], number + first + 1) if len(parts) == 4 else None
            return DalResult.proven_infinite(InfiniteCertificate(kind, component, diamonds))
    raise GraphFormatError(f"incomplete {outcome.value} result")


def _table(rows: List[Tuple[str, ...]]) -> List[str]:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]


def render_document(document: ColoringDocument) -> str:
    lines = [f"{document.method} coloring, k = {document.color_count}, "
             f"{'distinguishing' if document.proper else 'NOT distinguishing'}", ""]
    lines.extend(_table([("edge", "color")] + [(f"{u}-{v}", str(c)) for (u, v), c in sorted(document.colors.items())]))
    lines.append("")
    lines.extend(_table([("vertex", "c*")] + [(str(v), format_partition(p)) for v, p in sorted(document.partitions.items())]))
    return "\n".join(lines) + "\n"


def render_dal_result(graph: Graph, result: DalResult, method: str = "exact") -> str:
    if result.outcome is DalOutcome.FINITE:
        return f"dal = {result.k}\n\n" + render_document(build_document(graph, result.witness, method))
    if result.outcome is DalOutcome.NO_COLORING_UP_TO:
        return f"no distinguishing coloring with at most {result.k_max} colors\n"
    return f"dal = infinity: {result.certificate.describe()}\n"


def render_report(report: VerificationReport) -> str:
    if report.proper:
        return "distinguishing\n"
    rows = [("edge", "c*(u)", "c*(v)")]
    rows.extend((f"{u}-{v}", format_partition(p), format_partition(q)) for (u, v), p, q in report.violations)
    return "NOT distinguishing\n\n" + "\n".join(_table(rows)) + "\n"


def format_report(report: VerificationReport) -> str:
    lines = [f"proper: {'true' if report.proper else 'false'}"]
    lines.extend(f"violation: {u} {v} {format_partition(p)}" for (u, v), p, _ in report.violations)
    return "\n".join(lines) + "\n"


def format_refusal(method: str, certificate: Optional[InfiniteCertificate] = None, hypothesis: Optional[str] = None,
                   message: Optional[str] = None) -> str:
    """Document for a constructive method that declined: a certificate of dal = infinity or a failed hypothesis."""
    lines = ["proper: false", f"method: {method}"]
    if certificate is not None:
        text = f"refusal: certificate {certificate.kind.value} " + ",".join(str(v) for v in sorted(certificate.component))
        if certificate.diamonds is not None:
            text += f" {certificate.diamonds}"
        lines.append(text)
    else:
        lines.append(f"refusal: hypothesis {hypothesis}")
    if message:
        lines.append(f"message: {message}")
    return "\n".join(lines) + "\n"
