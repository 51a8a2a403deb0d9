"""Uniform-density toolkit for matroids, graphs and represented matroids."""

__version__ = "0.1.0"

from .matroid import (
    Certificate,
    Matroid,
    Verdict,
    connected_components,
    coloops,
    density,
    direct_sum,
    dual,
    intersection,
    is_strictly_uniformly_dense,
    is_uniformly_dense,
    loops,
    rank,
    uniform_matroid,
    union,
    validate_matroid,
)
from .measure import (
    BasisMeasure,
    EUniform,
    Infeasible,
    NotEUniform,
    NotStrict,
    find_e_uniform_measure,
    find_positive_measure,
    verify_measure,
)
from .graphs import (
    Graph,
    betti,
    classify_bicyclic,
    components,
    cycle_matroid,
    graph_density,
    is_uniformly_dense_graph,
    near_perfect_matching,
    reduced_incidence_matrix,
    structural_screen,
    toughness_verify,
    tree_packing,
)
from .spectral import (
    SymMatrix,
    edge_laplacian,
    eigen_max,
    lambda_max_bounds,
    normalized_laplacian,
    nullity,
    spectral_ud_check,
)
from .representable import (
    ProjectionMatrix,
    Representation,
    ScalingResult,
    constant_diag_projection,
    determinantal_measure,
    matroid_from_matrix,
    matroid_from_projection,
    operator_scale,
    plucker,
    principal_rank_bounds,
    projection,
    variety_membership_coords,
    variety_membership_matrix,
)

__all__ = [name for name in dir() if not name.startswith("_")]
