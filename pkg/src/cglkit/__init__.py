"""Exact-arithmetic toolkit for CGL extensions (quantum nilpotent algebras).

Presentations carry a lambda matrix, the Q-data of the Ore deltas, and a
rational torus action.  On top of that the package computes the homogeneous
prime elements, the Nakayama automorphism, the frame/core decomposition,
and audits candidate unipotent endomorphisms, all over Q(q_1, ..., q_m).
"""

from .automorphisms import (
    EndomorphismSpec,
    centralizer_eigenspace_dim,
    check_unipotent_structure,
    compose,
    degree_zero_component,
    is_unipotent,
    random_unipotent_search,
    verify_endomorphism,
)
from .errors import (
    AmbiguousPredecessor,
    CGLError,
    DivergenceBudgetExceeded,
    DivisionByZero,
    InternalInconsistency,
    MalformedPresentation,
    MissingHStar,
    MultiParameterUnsupported,
    NoGradingDefined,
    NoPredecessorSolution,
    NotAMonomial,
    NotFiltered,
    NotHomogeneous,
    NotInXi,
    NotReversible,
    ParseError,
    SingularDegreeZeroPart,
    UnknownGenerator,
    UnknownPreset,
    ZeroElement,
)
from .pbw import PBWPolynomial, apply_endomorphism, multiply, normalize_words, power
from .presentation import (
    CGLPresentation,
    TorusData,
    is_interval_permutation,
    is_symmetric,
    is_torsionfree,
    permute_presentation,
    reverse_presentation,
    sample_interval_permutation,
    validate_cgl,
    validate_symmetric,
)
from .presets import CATALOG, parse_preset_spec, preset
from .primes import (
    CenterLattice,
    EtaData,
    LatticeDescription,
    YElementTable,
    bicharacter_radical,
    compute_P_x,
    compute_y_elements,
    greedy_prime_factorization,
    irreducibility_probe,
    is_saturated,
    monomials_of_degree,
    monomials_with_character,
    rank_of,
    saturation_closure,
    torus_center_basis,
    verify_quantum_affine,
)
from .reporting import CheckResult, ValidationReport
from .scalars import LaurentFraction, ParameterSpace, SignedMonomial
from .structure import (
    CoreDecomposition,
    DiagonalMap,
    check_diagonal_automorphism,
    core_decomposition,
    diagonal_constraint_rank,
    nakayama_automorphism,
    verify_nakayama_by_normal_element,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousPredecessor",
    "CATALOG",
    "CGLError",
    "CGLPresentation",
    "CenterLattice",
    "CheckResult",
    "CoreDecomposition",
    "DiagonalMap",
    "DivergenceBudgetExceeded",
    "DivisionByZero",
    "EndomorphismSpec",
    "EtaData",
    "InternalInconsistency",
    "LatticeDescription",
    "LaurentFraction",
    "MalformedPresentation",
    "MissingHStar",
    "MultiParameterUnsupported",
    "NoGradingDefined",
    "NoPredecessorSolution",
    "NotAMonomial",
    "NotFiltered",
    "NotHomogeneous",
    "NotInXi",
    "NotReversible",
    "PBWPolynomial",
    "ParameterSpace",
    "ParseError",
    "SignedMonomial",
    "SingularDegreeZeroPart",
    "TorusData",
    "UnknownGenerator",
    "UnknownPreset",
    "ValidationReport",
    "YElementTable",
    "ZeroElement",
    "apply_endomorphism",
    "bicharacter_radical",
    "centralizer_eigenspace_dim",
    "check_diagonal_automorphism",
    "check_unipotent_structure",
    "compose",
    "compute_P_x",
    "compute_y_elements",
    "core_decomposition",
    "degree_zero_component",
    "diagonal_constraint_rank",
    "greedy_prime_factorization",
    "irreducibility_probe",
    "is_interval_permutation",
    "is_saturated",
    "is_symmetric",
    "is_torsionfree",
    "is_unipotent",
    "monomials_of_degree",
    "monomials_with_character",
    "multiply",
    "nakayama_automorphism",
    "normalize_words",
    "parse_preset_spec",
    "permute_presentation",
    "power",
    "preset",
    "random_unipotent_search",
    "rank_of",
    "reverse_presentation",
    "sample_interval_permutation",
    "saturation_closure",
    "torus_center_basis",
    "validate_cgl",
    "validate_symmetric",
    "verify_endomorphism",
    "verify_nakayama_by_normal_element",
    "verify_quantum_affine",
]
