"""Numerical operator theory on weighted Hardy spaces of entire functions.

The space H_E(xi) holds entire functions ``f = sum a_n z^n`` with
``||f||^2 = sum |a_n|^2 xi_n^2``.  This package represents truncations of
such functions and of composition, weighted composition, multiplication and
differentiation operators in the orthonormal basis ``z^n / xi_n``, and checks
isometry, unitarity, invertibility and boundedness numerically.
"""
from .diagnostics import (Trend, Verdict, boundedness_report, infeasibility_sweep,
                          invertibility_check, isometry_defect, m_isometry_defect,
                          unitary_defect, weighted_isometry_infeasibility)
from .errors import (ConfigError, DegreeExceedsWeights, HardyOpsError, InsufficientHeadroom,
                     NonPositiveWeight, SpaceMismatch, ZeroScale)
from .operators import (OperatorMatrix, add, adjoint, apply, compose, composition_matrix,
                        differentiation_matrix, generalized_matrix, identity_matrix,
                        multiplier_matrix, scalar_mul, weighted_composition_matrix)
from .series import (AffineMap, TruncatedEntireFunction, compose_affine, differentiate,
                     evaluate, inner_product, kernel, monomial, multiply, norm, polynomial)
from .weights import WeightSequence, fock_weights, load_weights, scale_weights, table_weights

__version__ = "0.1.0"
