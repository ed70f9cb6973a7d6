"""Graded PI invariants of finite-dimensional graded algebras over Q.

Exact computation of graded codimensions and colengths through ranks of
evaluation matrices and S_n character theory, with checks of the
accompanying bounds and combinatorial inequalities.
"""

__version__ = "0.1.0"

from .algebra_file import export_algebra, export_text, parse_algebra, parse_text
from .analysis import (InvariantReport, check_unital_monotone, compute_report, exponent_estimates, graded_codimension,
                       graded_codimension_direct, graded_colength, theorem_applicability,
                       verify_all_sequences, verify_codimension_bound, verify_colength_bound,
                       verify_growth_ratio)
from .combinatorics import (CycleType, Partition, char_value, check_dim_phi_bounds,
                            check_multinomial_phi_bounds, check_push_monotone,
                            check_scaled_dimension_inequality, dim_irrep, enumerate_partitions,
                            multinomial, phi, push_down_box)
from .errors import (ConsistencyError, InvalidAlgebraError, ParseError, PreconditionError,
                     ResourceCapError)
from .graded_algebra import (BUILTINS, GradedAlgebra, GradedSubspace, OperationTable, annihilator,
                             builtin, classify_table, ideal_closure, is_graded_simple, is_simple,
                             support, unit_element, validate)
from .multilinear import (Caps, DegreeVector, EvaluationMatrix, enumerate_monomials,
                          evaluate_monomial, generic_space_dimension, partial_codimension)
from .representation import (multiplicities, partial_colength, quotient_trace,
                             verify_multiplicity_bound, verify_rank_character_sum)
from .verdicts import Verdict
