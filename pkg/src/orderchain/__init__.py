"""Order polytopes and chain polytopes of finite posets: vertices, edges,
the edge bijection between them, and exact geometric cross-checks."""

from .errors import (
    CycleError,
    EmptySetError,
    NotAntichainError,
    NotIdealError,
    NotInOmegaError,
    NotInPsiError,
    NotValidError,
    PosetFormatError,
    SizeError,
)
from .poset import (
    Poset,
    XWitness,
    count_linear_extensions,
    cover_pairs,
    enumerate_antichains,
    enumerate_ideals,
    find_X_subposet,
    ideal_generated_by,
    is_connected_subset,
    max_of,
    maximal_chains,
    min_of,
    poset_from_covers,
)
from .polytopes import (
    AntichainPair,
    EquivalenceReport,
    IdealPair,
    Inequality,
    SkeletonGraph,
    chain_edge,
    check_equivalence,
    degree_sequence,
    h_description,
    normalize_antichain_pair,
    omega_to_psi,
    order_edge,
    psi_to_omega,
    rho,
    skeleton,
)
from .oracle import count_facets, is_geometric_edge, lattice_points_in_dilation, normalized_volume

__version__ = "0.1.0"
