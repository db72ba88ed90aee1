"""Exact symbolic toolkit: formal Legendre transforms of polynomial
potentials, the tree-diagram expansion of the transform, polynomial map
inversion through the transform, and the pairing combinatorics of the
one-dimensional quartic Gaussian model.  Everything runs in exact rational
arithmetic; there is no floating point anywhere in the core."""

from .grammar import (
    PolynomialParseError,
    dual_names,
    format_polynomial,
    infer_variables,
    parse_polynomial,
    variable_names,
)
from .inversion import (
    BridgeLinearityError,
    PolynomialMap,
    bridge_hessian_check,
    bridge_potential,
    compose_maps,
    identity_map,
    invert_map_direct,
    invert_map_legendre,
    is_keller_map,
    jacobian_det,
    jacobian_matrix,
    map_substitute,
)
from .legendre import (
    Potential,
    gradient,
    hessian_constant,
    hessian_det,
    hessian_matrix,
    invert_gradient,
    legendre_transform,
    quadratic_form_matrix,
    verify_potential,
)
from .linalg import (
    SingularMatrixError,
    determinant,
    identity_matrix,
    matrix_inverse,
    matrix_multiply,
)
from .poly import Polynomial, exponent_vectors
from .series import TruncatedSeries, substitute, truncate
from .tensors import SymmetricTensor, contract_full, contract_vector
from .trees import (
    TensorBundle,
    TreeClass,
    aut_order,
    bundle_from_potential,
    canonical_encoding,
    enumerate_trees,
    labeled_tree_oracle,
    prufer_decode,
    tree_contraction,
    tree_expand,
    tree_weight,
)
from .wick import (
    ClosedGraphClass,
    LambdaSeries,
    classify_graphs,
    double_factorial,
    enumerate_pairings,
    gaussian_moment,
    group_order,
    log_y_series,
    series_exp,
    stabilizer_order,
    y_series,
)

__version__ = "0.1.0"

__all__ = [
    "BridgeLinearityError",
    "ClosedGraphClass",
    "LambdaSeries",
    "Polynomial",
    "PolynomialMap",
    "PolynomialParseError",
    "Potential",
    "SingularMatrixError",
    "SymmetricTensor",
    "TensorBundle",
    "TreeClass",
    "TruncatedSeries",
    "aut_order",
    "bridge_hessian_check",
    "bridge_potential",
    "bundle_from_potential",
    "canonical_encoding",
    "classify_graphs",
    "compose_maps",
    "contract_full",
    "contract_vector",
    "determinant",
    "double_factorial",
    "dual_names",
    "enumerate_pairings",
    "enumerate_trees",
    "exponent_vectors",
    "format_polynomial",
    "gaussian_moment",
    "gradient",
    "group_order",
    "hessian_constant",
    "hessian_det",
    "hessian_matrix",
    "identity_map",
    "identity_matrix",
    "infer_variables",
    "invert_gradient",
    "invert_map_direct",
    "invert_map_legendre",
    "is_keller_map",
    "jacobian_det",
    "jacobian_matrix",
    "labeled_tree_oracle",
    "legendre_transform",
    "log_y_series",
    "map_substitute",
    "matrix_inverse",
    "matrix_multiply",
    "parse_polynomial",
    "prufer_decode",
    "quadratic_form_matrix",
    "series_exp",
    "stabilizer_order",
    "substitute",
    "tree_contraction",
    "tree_expand",
    "tree_weight",
    "truncate",
    "variable_names",
    "y_series",
]
