"""Exact Harder-Narasimhan types, filtrations and stratification.

Layers, bottom up: `numpoly` (exact rational polynomials with the eventual
total order), `hntype` (HN types, polygons, the polygon partial order),
`lattice` (finite subobject lattices, semistability, HN filtrations, the
splitting-type oracle), `family` (families over finite topological spaces,
semicontinuity, stratification), `cli` (JSON command line).
"""

from .numpoly import (
    MINUS_INFINITY,
    NumPoly,
    Ordering,
    Rational,
    RatPoly,
    eventual_cmp,
    eventual_sign,
    from_binomial,
    is_numerical,
    poly_from_json,
    poly_to_json,
    rank,
    stabilization_bound,
    to_binomial,
)
from .hntype import (
    Condition1Violation,
    Condition2Violation,
    Condition3Violation,
    HNPolygon,
    HNType,
    HNTypeError,
    NonIncreasingRank,
    OutOfRange,
    PolygonPoint,
    hnt_leq,
    interpolate_at,
    lies_under,
    polygon_of,
    polygon_to_json,
    quotient_shift,
    type_from_json,
    type_to_json,
    validate_hn_type,
)
from .lattice import (
    BoundednessViolation,
    EmptyObject,
    HNFiltration,
    HypothesisViolation,
    LatticeError,
    LatticeValidationError,
    ModularAdditivityViolation,
    NonUniqueMaximizer,
    PurityViolation,
    SplittingType,
    StrictMonotonicityViolation,
    SubobjectLattice,
    ZeroLabelViolation,
    enumerate_admissible_chains,
    forced_first_step,
    hilbert_poly_splitting,
    hn_closed_form,
    hn_filtration,
    hn_type,
    interval_quotient,
    is_semistable,
    lattice_from_json,
    lattice_from_splitting,
    max_destabilizer,
    validate_lattice,
)
from .family import (
    FamilyError,
    FamilyValidationError,
    FiniteSpace,
    InductionMismatch,
    SemicontinuityRequired,
    SemicontinuityWitness,
    SheafFamily,
    Stratification,
    family_from_json,
)

__all__ = [
    "MINUS_INFINITY",
    "NumPoly",
    "Ordering",
    "Rational",
    "RatPoly",
    "eventual_cmp",
    "eventual_sign",
    "from_binomial",
    "is_numerical",
    "poly_from_json",
    "poly_to_json",
    "rank",
    "stabilization_bound",
    "to_binomial",
    "Condition1Violation",
    "Condition2Violation",
    "Condition3Violation",
    "HNPolygon",
    "HNType",
    "HNTypeError",
    "NonIncreasingRank",
    "OutOfRange",
    "PolygonPoint",
    "hnt_leq",
    "interpolate_at",
    "lies_under",
    "polygon_of",
    "polygon_to_json",
    "quotient_shift",
    "type_from_json",
    "type_to_json",
    "validate_hn_type",
    "BoundednessViolation",
    "EmptyObject",
    "HNFiltration",
    "HypothesisViolation",
    "LatticeError",
    "LatticeValidationError",
    "ModularAdditivityViolation",
    "NonUniqueMaximizer",
    "PurityViolation",
    "SplittingType",
    "StrictMonotonicityViolation",
    "SubobjectLattice",
    "ZeroLabelViolation",
    "enumerate_admissible_chains",
    "forced_first_step",
    "hilbert_poly_splitting",
    "hn_closed_form",
    "hn_filtration",
    "hn_type",
    "interval_quotient",
    "is_semistable",
    "lattice_from_json",
    "lattice_from_splitting",
    "max_destabilizer",
    "validate_lattice",
    "FamilyError",
    "FamilyValidationError",
    "FiniteSpace",
    "InductionMismatch",
    "SemicontinuityRequired",
    "SemicontinuityWitness",
    "SheafFamily",
    "Stratification",
    "family_from_json",
]
