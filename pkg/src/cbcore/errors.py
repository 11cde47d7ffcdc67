"""
errors.py

This module provides the exception hierarchy shared by every dalkit component.

Classes:
    DalkitError: Base class for all errors raised by the toolkit.
    GraphFormatError: Malformed graph, document, label map or hypergraph text.
    IncompleteColoringError: An edge needed to compute a partition is uncolored.
    BudgetExceededError: The exact solver ran out of search nodes.
    PreconditionError: An operation was called outside its hypotheses.
    StructuralViolationError: A configuration breaks one of its invariants.
    EmbeddingError: A pattern embedding is not injective or violates degree conditions.
    InvariantViolationError: An internal guarantee failed.
    FormulaError: A CNF formula is malformed or unsupported.
    DocumentIntegrityError: A stored document disagrees with recomputation.
    ConfigError: A settings file or environment value has the wrong type.
"""
from typing import Any, Optional


class DalkitError(Exception):
    """
    Base class for every error raised by cbcore and dalkit.
    """


class GraphFormatError(DalkitError):
    """
    Raised when text input cannot be parsed.

    Attributes:
        line (Optional[int]): 1-based line number of the offending line, when known.
    """

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class IncompleteColoringError(DalkitError):
    """
    Raised when a partition is requested at a vertex with an uncolored incident edge.

    Attributes:
        edge (tuple): The uncolored edge.
    """

    def __init__(self, edge: Any):
        self.edge = edge
        super().__init__(f"edge {edge} is not colored")


class BudgetExceededError(DalkitError):
    """
    Raised when the search visits more nodes than the configured budget.

    Attributes:
        nodes (int): Nodes visited when the search stopped.
    """

    def __init__(self, nodes: int):
        self.nodes = nodes
        super().__init__(f"node budget exhausted after {nodes} nodes")


class PreconditionError(DalkitError):
    """
    Raised when an operation is called outside its hypotheses.

    Attributes:
        hypothesis (str): Short name of the violated hypothesis.
    """

    def __init__(self, hypothesis: str, message: Optional[str] = None):
        self.hypothesis = hypothesis
        super().__init__(message or f"precondition violated: {hypothesis}")


class StructuralViolationError(DalkitError):
    """
    Raised when a configuration (H, D, M) breaks an invariant.

    Attributes:
        invariant (str): Short name of the broken invariant.
    """

    def __init__(self, invariant: str, message: Optional[str] = None):
        self.invariant = invariant
        super().__init__(message or f"configuration invariant broken: {invariant}")


class EmbeddingError(DalkitError):
    """Raised when an embedding cannot be used for a reduction."""


class InvariantViolationError(DalkitError):
    """Raised when a guarantee the algorithms rely on does not hold."""


class FormulaError(DalkitError):
    """
    Raised for malformed DIMACS input or unsupported formulas.

    Attributes:
        line (Optional[int]): 1-based line number, when known.
    """

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DocumentIntegrityError(DalkitError):
    """Raised when a document does not match its graph or its own recomputed data."""


class ConfigError(DalkitError):
    """
    Raised when a settings value cannot be used.

    Attributes:
        key (str): The offending key or environment variable.
    """

    def __init__(self, key: str, message: str):
        self.key = key
        super().__init__(message)
