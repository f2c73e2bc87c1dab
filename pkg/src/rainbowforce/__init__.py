"""Tools for forcing rainbow induced subgraphs through proper colorings.

A host graph forces a pattern when every proper vertex coloring of the host,
using any number of colors, contains an induced copy of the pattern whose
vertices all received distinct colors.  This package computes the minimum
host order for a given pattern: closed formulas for recognized families,
general lower and upper bounds, explicit witness constructions, an exhaustive
coloring-search engine for certifying single hosts, and exact searches over
all candidate hosts with checkpointing and caching.
"""

from .bounds import (
    BoundsReport,
    bounds_report,
    composition_bounds,
    exact_formula,
    general_bounds,
    independent_partition_bound,
    is_turan,
    path_upper_bound,
    replication_upper_bound,
    weak_lower_bound,
)
from .canonical import CanonicalForm, canonical_form, canonical_graph, canonical_order, graph_from_form
from .coloring import chromatic_number, greedy_coloring, max_clique_size
from .constructions import (
    ReplicationStructure,
    block_clique_witness,
    quotient_graph,
    replication_cliques,
    replication_graph,
    vertex_clique_witness,
)
from .engine import (
    ArrowCertificate,
    BudgetExceededError,
    ImproperColoringError,
    PatternTooLargeError,
    SearchStats,
    arrows,
    arrows_replication,
    check_proper,
    default_vertex_order,
    find_rainbow_copy,
    find_rainbow_transversal,
    oracle_arrows,
)
from .enumeration import class_count, enumerate_graphs, graph_classes
from .graphs import (
    MAX_VERTICES,
    Graph,
    GraphError,
    anticlique,
    clique,
    complement,
    complete_multipartite,
    connected_components,
    contains_induced,
    count_non_edges,
    cycle,
    disjoint_union,
    format_edge_list,
    from_edges,
    induced_subgraph,
    is_isomorphic,
    join,
    parse_edge_list,
    parse_graph6,
    path,
    star,
    to_graph6,
    turan,
    union_with_edges,
)
from .resultcache import ResultCache, default_cache_path
from .search import (
    CheckpointError,
    SearchOutcome,
    load_checkpoint,
    min_forcing_order,
    min_replication_order,
    save_checkpoint,
)
from .version import ENGINE_VERSION, PACKAGE_VERSION

__version__ = PACKAGE_VERSION

__all__ = [
    "ArrowCertificate",
    "BoundsReport",
    "BudgetExceededError",
    "CanonicalForm",
    "CheckpointError",
    "ENGINE_VERSION",
    "Graph",
    "GraphError",
    "ImproperColoringError",
    "MAX_VERTICES",
    "PatternTooLargeError",
    "ReplicationStructure",
    "ResultCache",
    "SearchOutcome",
    "SearchStats",
    "anticlique",
    "arrows",
    "arrows_replication",
    "block_clique_witness",
    "bounds_report",
    "canonical_form",
    "canonical_graph",
    "canonical_order",
    "check_proper",
    "chromatic_number",
    "class_count",
    "clique",
    "complement",
    "complete_multipartite",
    "composition_bounds",
    "connected_components",
    "contains_induced",
    "count_non_edges",
    "cycle",
    "default_cache_path",
    "default_vertex_order",
    "disjoint_union",
    "enumerate_graphs",
    "exact_formula",
    "find_rainbow_copy",
    "find_rainbow_transversal",
    "format_edge_list",
    "from_edges",
    "general_bounds",
    "graph_classes",
    "graph_from_form",
    "greedy_coloring",
    "independent_partition_bound",
    "induced_subgraph",
    "is_isomorphic",
    "is_turan",
    "join",
    "load_checkpoint",
    "max_clique_size",
    "min_forcing_order",
    "min_replication_order",
    "oracle_arrows",
    "parse_edge_list",
    "parse_graph6",
    "path",
    "path_upper_bound",
    "quotient_graph",
    "replication_cliques",
    "replication_graph",
    "replication_upper_bound",
    "save_checkpoint",
    "star",
    "to_graph6",
    "turan",
    "union_with_edges",
    "vertex_clique_witness",
    "weak_lower_bound",
]
