"""Graph-minor containment and minor-saturation toolkit."""

from .graph import (
    GPLabel,
    Graph,
    GraphError,
    complete,
    complete_bipartite,
    cycle,
    generalized_petersen,
    gp_dihedral_group,
    gp_label,
    is_automorphism,
    make_graph,
    nonedge_orbits,
    path,
    read_edge_list,
    star,
    vertex_connectivity,
    wagner,
    write_edge_list,
)
from .minors import (
    BudgetExhaustedError,
    MinorModel,
    SearchBudget,
    SearchResult,
    extend_to_spanning,
    find_minor,
    has_minor,
    spanning_edge_bound,
    verify_model,
)

__all__ = [
    "GPLabel",
    "Graph",
    "GraphError",
    "complete",
    "complete_bipartite",
    "cycle",
    "generalized_petersen",
    "gp_dihedral_group",
    "gp_label",
    "is_automorphism",
    "make_graph",
    "nonedge_orbits",
    "path",
    "read_edge_list",
    "star",
    "vertex_connectivity",
    "wagner",
    "write_edge_list",
    "BudgetExhaustedError",
    "MinorModel",
    "SearchBudget",
    "SearchResult",
    "extend_to_spanning",
    "find_minor",
    "has_minor",
    "spanning_edge_bound",
    "verify_model",
]
