"""Lefschetz properties of ideals generated by powers of linear forms, and plane line arrangements.

Everything is computed exactly over Q (or modulo a large prime on request).
"""

__version__ = "0.1.0"

from .errors import (BadPrimeError, DimensionMismatchError, HypothesisError, InconsistencyError, InputError,
                     InsufficientBoundError, InvalidArrangementError, LefarrError, UnsupportedInputError)
from .exactmath import ExactMatrix, PrimeField, RowSpace, kernel_basis, prime_mode, rank, rational_mode, rref, scalar
from .polyring import HomogeneousForm, LinearForm, RingContext, power_of_linear
from .ideals import (EquigeneratedIdeal, GradedIdeal, HilbertProfile, PowerIdeal, hilbert, hilbert_profile,
                     power_ideal, syzygy_dimension)
from .generic import GenericSampler
from .lefschetz import (NsTriple, LefschetzReport, ns_triple, p1bis_oracle, slp_check, thickened_line_sections_matrix,
                        times_L_power_matrix, wlp_check)
from .apolarity import (FatPointScheme, UnexpectedCurveReport, cor_unexp_equivalence, ei_duality_check,
                        fat_point_system_dim, inverse_system, unexpected_curve_check)
from .laplace import (OsculatingReport, hypersurface_route_dim, laplace_count_via_lefschetz, osculating_dim_apolar,
                      osculating_dim_direct, thgen_equivalence_check, thgen_routes)
from .arrangements import (DualPointSet, LineArrangement, NumericalCharacter, SplittingType, aligned_criterion_check,
                           character_gap_subscheme, derivation_report, dual_points, intersection_lattice, max_aligned,
                           numerical_character, prop_bundle_equivalence, saito_freeness, splitting_type, terao_compare)
