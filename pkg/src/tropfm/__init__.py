"""Exact multilinear algebra for real tori with integral structure.

The package models tori ``N_R / Lambda``, their bigraded (co)homology,
line bundles given by Appell-Humbert data, the Poincare bundle and the
Fourier-Mukai transform, and checks the identities relating them with
exact rational arithmetic.
"""

from tropfm.exact_linalg import (
    IntMatrix,
    RatMatrix,
    SmithForm,
    check_cauchy_binet,
    check_jacobi_identity,
    cokernel_order,
    det_exact,
    inverse,
    minor,
    smith_normal_form,
)
from tropfm.exterior import (
    MultiIndex,
    complement,
    contract_indices,
    shuffle_sign,
    wedge_indices,
)
from tropfm.torus import (
    CohClass,
    HomClass,
    TorusDescriptor,
    cap,
    class_power,
    cup,
    degree,
    delta_top,
    dual_torus,
    exp_class,
    fundamental_class,
    pd_to_coh,
    pd_to_hom,
    pontryagin_coh,
    pontryagin_hom,
    product_torus,
    pullback_p1,
    pushforward_p2,
    standard_torus,
)
from tropfm.line_bundles import (
    AppellHumbertData,
    LatticePoint,
    chern,
    deg_phi,
    factor_of_automorphy,
    h0,
    inverse_bundle,
    is_ample,
    is_isomorphic,
    is_nondegenerate,
    kernel_invariants,
    phi_matrices,
    tensor,
    theorem_of_square_check,
    translate_pullback,
    trivial_bundle,
)
from tropfm.fourier_mukai import (
    PoincareBundle,
    fm_closed,
    fm_kernel,
    fm_kernel_closed,
    fm_oracle,
    poincare_bundle,
    poincare_chern,
    pushforward_phi,
    restriction_check,
)
from tropfm.theorems import (
    CrossCheckError,
    VerificationReport,
    intersection_power_class,
    pontryagin_power,
    random_ample_E,
    random_general_E,
    random_symmetric_E,
    run_trials,
    verify_binomial_pontryagin,
    verify_cauchy_binet,
    verify_cocycle,
    verify_fm_theorem,
    verify_generalized_poincare,
    verify_geometric_rr,
    verify_jacobi,
    verify_poincare_bundle,
    verify_prym_identity,
    verify_seesaw,
    verify_square,
    verify_top_power,
)
from tropfm.graphs import (
    GraphError,
    JacobianInstance,
    MetricGraph,
    cycle_basis,
    gram_matrix,
    jacobian_instance,
    parse_graph,
    run_jacobian_poincare,
    spanning_tree_weight,
)

__version__ = "0.1.0"

__all__ = [
    "IntMatrix",
    "RatMatrix",
    "SmithForm",
    "check_cauchy_binet",
    "check_jacobi_identity",
    "cokernel_order",
    "det_exact",
    "inverse",
    "minor",
    "smith_normal_form",
    "MultiIndex",
    "complement",
    "contract_indices",
    "shuffle_sign",
    "wedge_indices",
    "CohClass",
    "HomClass",
    "TorusDescriptor",
    "cap",
    "class_power",
    "cup",
    "degree",
    "delta_top",
    "dual_torus",
    "exp_class",
    "fundamental_class",
    "pd_to_coh",
    "pd_to_hom",
    "pontryagin_coh",
    "pontryagin_hom",
    "product_torus",
    "pullback_p1",
    "pushforward_p2",
    "standard_torus",
    "AppellHumbertData",
    "LatticePoint",
    "chern",
    "deg_phi",
    "factor_of_automorphy",
    "h0",
    "inverse_bundle",
    "is_ample",
    "is_isomorphic",
    "is_nondegenerate",
    "kernel_invariants",
    "phi_matrices",
    "tensor",
    "theorem_of_square_check",
    "translate_pullback",
    "trivial_bundle",
    "PoincareBundle",
    "fm_closed",
    "fm_kernel",
    "fm_kernel_closed",
    "fm_oracle",
    "poincare_bundle",
    "poincare_chern",
    "pushforward_phi",
    "restriction_check",
    "CrossCheckError",
    "VerificationReport",
    "intersection_power_class",
    "pontryagin_power",
    "random_ample_E",
    "random_general_E",
    "random_symmetric_E",
    "run_trials",
    "verify_binomial_pontryagin",
    "verify_cauchy_binet",
    "verify_cocycle",
    "verify_fm_theorem",
    "verify_generalized_poincare",
    "verify_geometric_rr",
    "verify_jacobi",
    "verify_poincare_bundle",
    "verify_prym_identity",
    "verify_seesaw",
    "verify_square",
    "verify_top_power",
    "GraphError",
    "JacobianInstance",
    "MetricGraph",
    "cycle_basis",
    "gram_matrix",
    "jacobian_instance",
    "parse_graph",
    "run_jacobian_poincare",
    "spanning_tree_weight",
]
