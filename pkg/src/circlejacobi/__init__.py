"""Exact bispectral machinery for Jacobi polynomials on the unit circle.

Everything structural runs in rational arithmetic: Verblunsky
coefficients, the monic circle polynomials and their Laurent
companions, the pentadiagonal one-sided recurrence, the Dunkl-type
differential operator and its eigenvalues, the reflection-based algebra
those operators generate, the map down to monic Jacobi polynomials on
[-2, 2], and the trigonometric moment functionals.  Floating point only
enters for truncated spectra and quadrature cross-checks.
"""

from .algebra import (
    AlgebraParams,
    CanonicalForm,
    big_lambda,
    build_xy,
    build_xy_matrix,
    canonicalize,
    derive_representation,
    verify_central_extension,
    verify_relations_functional,
    verify_relations_matrix,
    verify_representation_derivation,
    y_eigencheck,
)
from .cmv import (
    BandedOperator,
    anticommutator,
    build_m1,
    build_m2,
    cmv_matrix,
    commutator,
    truncated_spectrum,
    verify_gevp_and_five_term,
    verify_reflection_rows,
)
from .dunkl import (
    apply_k,
    apply_k_single_moment,
    lambda_n,
    lambda_single_moment,
    selfadjoint_residual,
    verify_bispectral,
)
from .laurent import LaurentPoly, Rational
from .moments import (
    MomentSeq,
    Weight,
    determinantal_phi,
    inner_product,
    orthogonality_check,
    sigma,
    toeplitz_delta,
    verify_determinantal_match,
    verify_toeplitz_h,
)
from .opuc import (
    JacobiParams,
    OPUCFamily,
    build_family,
    family_from_verblunsky,
    single_moment_phi,
    single_moment_verblunsky,
    star,
    verblunsky,
)
from .report import Check, VerificationReport
from .szego import (
    SymmetricLaurent,
    SzegoPair,
    build_p,
    build_q,
    build_szego_pair,
    classical_jacobi_oracle,
    rec_coeffs,
    verify_classical_match,
    verify_dep_and_pq_identity,
    verify_recurrence_closure,
    verify_three_term,
    verify_transforms,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraParams",
    "BandedOperator",
    "CanonicalForm",
    "Check",
    "JacobiParams",
    "LaurentPoly",
    "MomentSeq",
    "OPUCFamily",
    "Rational",
    "SymmetricLaurent",
    "SzegoPair",
    "VerificationReport",
    "Weight",
    "anticommutator",
    "apply_k",
    "apply_k_single_moment",
    "big_lambda",
    "build_family",
    "build_m1",
    "build_m2",
    "build_p",
    "build_q",
    "build_szego_pair",
    "build_xy",
    "build_xy_matrix",
    "canonicalize",
    "classical_jacobi_oracle",
    "cmv_matrix",
    "commutator",
    "derive_representation",
    "determinantal_phi",
    "family_from_verblunsky",
    "inner_product",
    "lambda_n",
    "lambda_single_moment",
    "orthogonality_check",
    "rec_coeffs",
    "selfadjoint_residual",
    "sigma",
    "single_moment_phi",
    "single_moment_verblunsky",
    "star",
    "toeplitz_delta",
    "truncated_spectrum",
    "verblunsky",
    "verify_bispectral",
    "verify_central_extension",
    "verify_classical_match",
    "verify_dep_and_pq_identity",
    "verify_determinantal_match",
    "verify_gevp_and_five_term",
    "verify_recurrence_closure",
    "verify_reflection_rows",
    "verify_relations_functional",
    "verify_relations_matrix",
    "verify_representation_derivation",
    "verify_three_term",
    "verify_toeplitz_h",
    "verify_transforms",
    "y_eigencheck",
]
