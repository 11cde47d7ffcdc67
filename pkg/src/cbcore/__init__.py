# Core data structures and exact search for color-blind distinguishing edge-colorings
from .coloring import EdgeColoring, VerificationReport, color_blind_partition, verify_distinguishing
from .errors import DalkitError
from .graph import Graph, parse_graph, format_graph
from .solver import DalOutcome, DalResult, SearchConfig, compute_dal, decide_dal_le_k, enumerate_extensions
from .structure import InfiniteCertificate, InfiniteKind, block_decomposition, classify_infinite

__all__ = [
    'EdgeColoring', 'VerificationReport', 'color_blind_partition', 'verify_distinguishing',
    'DalkitError',
    'Graph', 'parse_graph', 'format_graph',
    'DalOutcome', 'DalResult', 'SearchConfig', 'compute_dal', 'decide_dal_le_k', 'enumerate_extensions',
    'InfiniteCertificate', 'InfiniteKind', 'block_decomposition', 'classify_infinite',
]
