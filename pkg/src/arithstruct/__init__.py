"""Exact toolkit for arithmetical structures on connected multigraphs.

An arithmetical structure on ``G`` is a pair of positive integer vectors
``(d, r)`` with ``gcd(r) = 1`` and ``L(G, d) r = 0``, where ``L(G, d)`` has
``d`` on the diagonal and minus the edge multiplicities elsewhere.
"""

from .critgroup import (
    ConsistencyError,
    GroupInvariants,
    critical_group,
    group_order,
    tree_order_formula,
)
from .enumeration import (
    BudgetExceeded,
    EnumerationBudget,
    EnumerationResult,
    brute_force,
    count,
    enumerate_star,
    enumerate_structures,
    enumerate_tree,
)
from .extension import (
    extend_path,
    extend_star,
    hirzebruch_jung,
    repeat_denominator,
    sylvester_greedy,
)
from .gluing import DetIdentity, Piece, det_identity, glue, glue_all, split
from .graph import (
    BlockDecomposition,
    GraphError,
    Multigraph,
    blocks_and_cut_vertices,
    build,
    complete_graph,
    cycle_graph,
    delete_vertex,
    is_connected,
    path_graph,
    star_graph,
    wedge,
)
from .linalg import det, integer_kernel_basis, kernel_vector, laplacian, smith_normal_form
from .structures import (
    ArithmeticalStructure,
    RationalStructure,
    Report,
    StructureError,
    as_mapping,
    d_from_r,
    laplacian_structure,
    r_from_d,
    structure_from_json,
    verify,
    verify_rational,
    verify_structure,
)

__version__ = "0.1.0"
