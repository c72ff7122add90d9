"""Finite rings, their classification, and projective planes over them."""
from .errors import (
    ArgumentError,
    AxiomError,
    CapacityError,
    InvariantViolation,
    RingPlaneError,
    SpecParseError,
    StructuralError,
)
from .ring import (
    FiniteRing,
    IdealSet,
    RingMorphism,
    all_ideals,
    characteristic,
    check_axioms,
    direct_sum,
    find_isomorphism,
    generated_ideal,
    idempotents,
    jacobson_radical,
    opposite,
    quotient,
    ring_from_json,
    ring_to_json,
    units,
    zero_divisors,
)
from .constructions import (
    double,
    eisenstein_chain,
    galois_ring,
    gf,
    ixy,
    matrix_ring,
    trunc_skew,
    witt2,
    zmod,
)
from .classify import (
    classify_case,
    decompose_commutative,
    is_chain,
    is_local,
    is_pir,
    raghavendran_params,
    ramification,
    zero_divisor_local_test,
)

__version__ = "0.1.0"
