"""Edge colorings of bounded-degree graphs, transversal decompositions of 0-1
matrices, prefix-coloring tree search, and separation gadgets built from
2-transversal partitions."""

from .core import (
    BudgetExceeded,
    EdgeColoring,
    FiniteMultigraph,
    GraphError,
    MatchingPartition,
    NotBipartite,
    PointSet,
    PreconditionError,
    TransversalPartition,
    UnsupportedMultigraph,
    check_proper,
    coloring_to_partition,
    graph_to_matrix,
    matrix_to_graph,
    max_degree,
)
from .chromatic import (
    chromatic_index_bruteforce,
    decompose_matchings,
    decompose_transversals,
    greedy_edge_color,
    koenig_edge_color,
    vizing_edge_color,
)
from .compactness import LazyGraph, find_dead_node, find_prefix_path, is_tree_node, level_count
from .gadgets import (
    InjectionPair,
    all_two_transversal_partitions,
    build_basic,
    build_gadget,
    build_staircase,
    build_two_regular,
    combine,
    extract_separator,
    verify_forcing,
)

__version__ = "0.1.0"
