"""khwp: solvers, approximation pipelines and exact oracles for the
k-agents Hamiltonian walk problem.

k agents stand on k distinct vertices whose induced subgraph stays
connected; each step every agent holds or moves along one edge.  The
goal is the shortest such walk covering every vertex.  The package
provides optimal tree solvers, two-agent approximations for arbitrary
graphs, hypergraph and constant-k connected-set-cover solvers, and
exhaustive oracles that certify every bound on desk-scale instances.
"""

from .config import Caps, DEFAULT_CAPS, load_caps
from .errors import (
    CapExceededError,
    GraphFormatError,
    InfeasibleError,
    InvariantViolationError,
    KhwpError,
    NotATreeError,
)
from .graphs import (
    Graph,
    GridPattern,
    Hypergraph,
    dump_graph,
    dump_hypergraph,
    enumerate_c4,
    enumerate_connected_ksubsets,
    enumerate_grid_2x3,
    load_graph,
    load_hypergraph,
    shortest_path_matrix,
    tree_diameter,
)
from .hypergraph import (
    AugmentedLineGraph,
    CscInstance,
    build_lstar,
    greedy_connected_set_cover,
    solve_khwp_graph_csc,
    solve_khwp_hypergraph,
)
from .metric import (
    MetricInstance,
    euler_path,
    metric_hamiltonian_path,
    min_matching_except_two,
    mst,
)
from .oracle import (
    exact_connected_set_cover,
    exact_hamiltonian_path,
    exact_hk,
    exact_hyperedge_walk,
    exact_set_packing,
)
from .tree import k_rhwp_tree, one_hwp_tree
from .two_agents import (
    Alg2Result,
    ContractedTree,
    PackingInstance,
    PackingSet,
    alg2,
    approx_set_packing,
    build_sp_instance,
    build_tr_graph,
    eq4_edge_count,
    modify_tr,
    simple_3approx,
    sp_lower_bound_check,
)
from .walks import (
    TransitionWalk,
    classify_transition,
    d_P_k,
    format_walk,
    one_to_two,
    parse_walk,
    rhwp_lower_bound,
    two_to_one,
    validate_configuration,
    validate_walk,
)

__version__ = "0.1.0"
