"""Canonical tree-decompositions that distinguish the k-blocks of a graph.

Separations are enumerated exhaustively, blocks and profiles orient them,
and the Ext and Loc strategies pick nested subsystems whose consistent
orientations are the nodes of a tree-decomposition.
"""

from .decomposition import (
    DecompositionError,
    TreeDecomposition,
    classify_parts,
    consistent_orientations,
    decomposition_from_nested,
    inhabited_node,
    orients_toward_node,
    validate_decomposition,
)
from .generators import (
    gen_cycle_cliques,
    gen_example3_like,
    gen_example4,
    gen_glued_k5,
    gen_path_cliques,
    gen_random,
)
from .graph import (
    NEVER_SEPARABLE,
    Graph,
    GraphFormatError,
    automorphisms,
    components,
    independent_paths_excl_edge,
    is_l_connected,
    local_connectivity,
    parse_graph,
)
from .profiles import (
    block_profile,
    enumerate_profiles,
    is_consistent,
    is_profile,
    is_tangle,
    k_blocks,
    restrict,
)
from .refinement import (
    condition7,
    is_good,
    is_well_separated,
    min_distinguisher_order,
    refine_theorem31,
    separations_SX,
    theorem34_hypotheses,
)
from .separations import (
    LimitExceeded,
    Separation,
    classify,
    corners,
    enumerate_separations,
    leq,
    nested,
)
from .strategies import (
    InfeasibleTask,
    Task,
    bound_report,
    extremal_separations,
    locally_maximal_separations,
    reduce_task,
    run_iterated,
    run_single,
)

__all__ = [name for name in dir() if not name.startswith("_")]
