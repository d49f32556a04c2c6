"""Exact invariants of relative tangency and nearest-point geometry.

Everything is computed over the rationals or a prime field with an
in-house Groebner engine; no floating point anywhere.
"""

from .errors import (EdlocusError, HypothesisFailure, InputError,
                     NotOnVariety, PositiveDimensionalFiber,
                     ResourceExhausted, SliceError)
from .rings import (QQ, CoefficientField, MonomialOrder, Polynomial,
                    RingContext, parse_polynomial, render_polynomial)
from .groebner import (EngineLimits, HilbertData, IdealPresentation,
                       buchberger, eliminate, exact_divide, hilbert_dim_degree,
                       ideal, ideal_equal, ideal_quotient, intersect,
                       normal_form, quotient_vector_dimension,
                       saturate_element, saturate_ideal, set_default_limits,
                       spoly)
from .geometry import (QuadraticForm, VarietyPair, derive_seed, ideal_mod_p,
                       jacobian_matrix, minors_ideal, radical_contains,
                       sample_point, singular_locus_ideal, slice_and_count)
from .duality import (DefectReport, GenericSliceReport, MultidegreeVector,
                      contact_locus, defect_pair, diagonal_check,
                      dual_fiber_probe, first_multidegree_consistency,
                      generic_slice_check, multidegree_vector,
                      pair_multidegrees, relative_conormal_ideal,
                      relative_dual_ideal, relative_polar_degrees)
from .formulas import (ChernInput, DeterminantalInvariants, DeterminantalSpec,
                       MatrixFlavor, RelativeDualProfile, alpha_coefficient,
                       chern_to_multidegrees, ci_chern_degree,
                       ci_conditional_degree, compound_matrix,
                       compound_symmetry_membership,
                       data_locus_degree_from_multidegrees,
                       determinantal_invariants,
                       determinantal_relative_defect, kalman_degree)
from .ed import (EDDResult, EDModel, EDSetup, ParamCorrespondence,
                 conditional_ed_degree, conditional_ed_ideal_affine,
                 conditional_ed_ideal_projective, correspondence_image_ideal,
                 data_locus_ideal, fiber_critical_count, joint_ed_ideal,
                 normal_image_in_data_locus, param_ed_correspondence,
                 sample_data_point)

__all__ = [
    "EdlocusError", "HypothesisFailure", "InputError", "NotOnVariety",
    "PositiveDimensionalFiber", "ResourceExhausted", "SliceError",
    "QQ", "CoefficientField", "MonomialOrder", "Polynomial", "RingContext",
    "parse_polynomial", "render_polynomial",
    "EngineLimits", "HilbertData", "IdealPresentation", "buchberger",
    "eliminate", "exact_divide", "hilbert_dim_degree", "ideal", "ideal_equal",
    "ideal_quotient", "intersect", "normal_form", "quotient_vector_dimension",
    "saturate_element", "saturate_ideal", "set_default_limits", "spoly",
    "QuadraticForm", "VarietyPair", "derive_seed", "ideal_mod_p",
    "jacobian_matrix", "minors_ideal", "radical_contains", "sample_point",
    "singular_locus_ideal", "slice_and_count",
    "DefectReport", "GenericSliceReport", "MultidegreeVector",
    "contact_locus", "defect_pair", "diagonal_check", "dual_fiber_probe",
    "first_multidegree_consistency", "generic_slice_check",
    "multidegree_vector", "pair_multidegrees", "relative_conormal_ideal",
    "relative_dual_ideal", "relative_polar_degrees",
    "ChernInput", "DeterminantalInvariants", "DeterminantalSpec",
    "MatrixFlavor", "RelativeDualProfile", "alpha_coefficient",
    "chern_to_multidegrees", "ci_chern_degree", "ci_conditional_degree",
    "compound_matrix", "compound_symmetry_membership",
    "data_locus_degree_from_multidegrees", "determinantal_invariants",
    "determinantal_relative_defect", "kalman_degree",
    "EDDResult", "EDModel", "EDSetup", "ParamCorrespondence",
    "conditional_ed_degree", "conditional_ed_ideal_affine",
    "conditional_ed_ideal_projective", "correspondence_image_ideal",
    "data_locus_ideal", "fiber_critical_count", "joint_ed_ideal",
    "normal_image_in_data_locus", "param_ed_correspondence",
    "sample_data_point",
]

__version__ = "0.1.0"
