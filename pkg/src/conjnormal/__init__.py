"""Conjugations, anti-linear maps and conjugate-normal matrices.

The public surface is re-exported here; see the submodules for details.
"""
from .antilinear import (AntiLinearMap, Conjugation, PartialAntiIsometry, apply,
                         canonical, compose, flip, is_antilinear_normal,
                         make_conjugation, random_conjugation, sharp_adjoint)
from .cnormal import (CartesianPair, CNormalReport, c_normal_battery, cartesian_decompose,
                      cartesian_equivalences, is_c_normal, is_c_skew, is_c_symmetric,
                      left_right_products, shift_cnormal_criterion, symmetrizations,
                      weighted_shift)
from .douglas import (DouglasSolution, PolarDecomposition, antilinear_douglas,
                      antilinear_equal_modulus_factor, antilinear_polar, cnormal_polar,
                      douglas_solve, range_included)
from .ensembles import make_rng
from .errors import (ConjNormalError, DomainError, InvalidConjugation, ModulusMismatch,
                     NotCNormal, NumericalFailure, RangeError)
from .inequalities import (InequalityReport, product_singular_bound,
                           self_commutator_bound, singular_value_sandwich)
from .numeric import (DEFAULT_TOL, SvdResult, Tolerance, eig_hermitian, pinv, psd_leq,
                      range_projector, sqrt_psd, svd)
from .structure import (cjp_factor, cjp_synthesize, conjugation_positive_factorization,
                        skew_structure, spectral_commutation_check)

__version__ = "0.1.0"

__all__ = [
    "AntiLinearMap", "Conjugation", "PartialAntiIsometry", "apply", "canonical",
    "compose", "flip", "is_antilinear_normal", "make_conjugation", "random_conjugation",
    "sharp_adjoint", "CartesianPair", "CNormalReport", "c_normal_battery",
    "cartesian_decompose", "cartesian_equivalences", "is_c_normal", "is_c_skew",
    "is_c_symmetric", "left_right_products", "shift_cnormal_criterion",
    "symmetrizations", "weighted_shift", "DouglasSolution", "PolarDecomposition",
    "antilinear_douglas", "antilinear_equal_modulus_factor", "antilinear_polar",
    "cnormal_polar", "douglas_solve", "range_included", "make_rng", "ConjNormalError",
    "DomainError", "InvalidConjugation", "ModulusMismatch", "NotCNormal",
    "NumericalFailure", "RangeError", "InequalityReport", "product_singular_bound",
    "self_commutator_bound", "singular_value_sandwich", "DEFAULT_TOL", "SvdResult",
    "Tolerance", "eig_hermitian", "pinv", "psd_leq", "range_projector", "sqrt_psd",
    "svd", "cjp_factor", "cjp_synthesize", "conjugation_positive_factorization",
    "skew_structure", "spectral_commutation_check", "__version__",
]
