"""Goldman bracket on closed orientable surfaces and the BV algebra HH^*(k[pi_1 S_g])."""
from .words import AlphabetError, CyclicWord, Letter, Word, concat, cyclic_reduce, free_reduce, invert
from .surface import (
    H1Class,
    LoopClass,
    Presentation,
    UnsupportedGenusError,
    abelianize,
    are_conjugate,
    conjugacy_canonical,
    dehn_reduce,
    enumerate_classes,
    is_identity,
    root_multiplicity,
    trivial_class,
)
from .fuchsian import (
    DegenerateGeometryError,
    Geodesic,
    MobiusMap,
    NotHyperbolicError,
    Representation,
    axes_cross,
    axis,
    axis_position,
    build_representation,
    crossing_sign,
    evaluate,
)
from .goldman import (
    BracketConfig,
    FormalSum,
    GoldmanBracket,
    NonStabilizedError,
    crossing_records,
    goldman_bracket,
    intersection_pairing,
    loop_h1_pairing,
    torus_bracket,
    torus_bracket_oracle,
    verify_goldman,
)
from .bv import (
    DEFAULT_SIGNS,
    ALL_PLUS,
    AxiomReport,
    BVElement,
    SignConfig,
    bv_delta,
    cup,
    gerstenhaber,
    resolve_signs,
    verify_axioms,
)

__version__ = "0.1.0"
