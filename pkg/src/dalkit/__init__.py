# Constructive colorers, gadget reductions and command-line tools for color-blind distinguishing colorings
from .cactus import color_cactus, color_cycle, color_tree
from .cubic import color_cubic
from .hypergraph import Hypergraph, characterize_dal2_bipartite, two_color
from .reducibility import Configuration, builtin_configurations, check_reducible
from .sat_reduction import CnfFormula, build_reduction, decode_assignment, encode_assignment

__all__ = [
    'color_cactus', 'color_cycle', 'color_tree',
    'color_cubic',
    'Hypergraph', 'characterize_dal2_bipartite', 'two_color',
    'Configuration', 'builtin_configurations', 'check_reducible',
    'CnfFormula', 'build_reduction', 'decode_assignment', 'encode_assignment',
]
