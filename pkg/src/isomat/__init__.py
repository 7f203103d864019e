"""
Isotropic matroids of looped simple graphs.

The isotropic matroid of a graph G on n vertices is the binary matroid
represented by (I | A | I + A), with A the adjacency matrix of G over GF(2)
and loops on the diagonal.
"""

from .delta_cycles import (
    DeltaMatroid,
    boxplus,
    cycles_by_formula,
    delta_matroid,
    delta_via_bases,
    graph_from_cycles,
    graph_from_delta,
    sigma,
    transverse_cycles,
    twist,
    zeta,
)
from .equivalence import MoveSet, compatible_criterion, equivalent, orbit
from .gf2 import Gf2Matrix, XorBasis, is_nonsingular, principal_submatrix, rank, rref
from .graphs import (
    LoopedSimpleGraph,
    adjacency_matrix,
    canonical_code,
    delete_vertex,
    edge_pivot,
    find_matched_4paths,
    loop_complement,
    nonsimple_local_complement,
    simple_local_complement,
)
from .isotropic import (
    CHI,
    PHI,
    PSI,
    CompatibleIso,
    Flavor,
    GroundElement,
    Perm3,
    SubTransversal,
    TheoremViolation,
    Triangulation,
    canonical_partition,
    compose_iso,
    elementary_iso,
    ias,
    ias_matrix,
    invert_iso,
    strong_map_check,
    triangle_check,
    verify_compatible_iso,
)
from .matroid import (
    BinaryMatroid,
    basis_exchange,
    circuits,
    closure,
    components,
    equal_matroids,
    find_fano_restriction,
    matroids_isomorphic,
    minor,
    rank_of,
)
from .polynomials import (
    MultiPoly,
    ParamAssignment,
    interlace_q,
    interlace_via_section,
    parametrized_rank_poly,
    transversal_section,
    tutte_subset_expansion,
    vertex_nullity_specialization,
)
from .triangulations import (
    bend_4path,
    canonicalize_triangulation,
    compatible_from_arbitrary,
    enumerate_triangulations,
    is_triangulation,
)

__all__ = [
    "BinaryMatroid",
    "CHI",
    "CompatibleIso",
    "DeltaMatroid",
    "Flavor",
    "Gf2Matrix",
    "GroundElement",
    "LoopedSimpleGraph",
    "MoveSet",
    "MultiPoly",
    "PHI",
    "PSI",
    "ParamAssignment",
    "Perm3",
    "SubTransversal",
    "TheoremViolation",
    "Triangulation",
    "XorBasis",
    "adjacency_matrix",
    "basis_exchange",
    "bend_4path",
    "boxplus",
    "canonical_code",
    "canonical_partition",
    "canonicalize_triangulation",
    "circuits",
    "closure",
    "compatible_criterion",
    "compatible_from_arbitrary",
    "components",
    "compose_iso",
    "cycles_by_formula",
    "delete_vertex",
    "delta_matroid",
    "delta_via_bases",
    "edge_pivot",
    "elementary_iso",
    "enumerate_triangulations",
    "equal_matroids",
    "equivalent",
    "find_fano_restriction",
    "find_matched_4paths",
    "graph_from_cycles",
    "graph_from_delta",
    "ias",
    "ias_matrix",
    "interlace_q",
    "interlace_via_section",
    "invert_iso",
    "is_nonsingular",
    "is_triangulation",
    "loop_complement",
    "matroids_isomorphic",
    "minor",
    "nonsimple_local_complement",
    "orbit",
    "parametrized_rank_poly",
    "principal_submatrix",
    "rank",
    "rank_of",
    "rref",
    "sigma",
    "simple_local_complement",
    "strong_map_check",
    "transversal_section",
    "transverse_cycles",
    "triangle_check",
    "tutte_subset_expansion",
    "twist",
    "verify_compatible_iso",
    "vertex_nullity_specialization",
    "zeta",
]
