"""Exact negativity-lemma solvers and a toric check of reflexive pushforwards."""
from .divisors import RDivisor, axpy, pos_neg_parts, round_down
from .errors import (
    ExdivError,
    HypothesisViolated,
    InvalidE,
    InvalidInput,
    LemmaViolation,
    NonSymmetric,
    NotNegativeDefinite,
    SingularMatrix,
)
from .linalg import QMatrix, det, is_negative_definite, solve_linear
from .systems import (
    CurveSystem,
    StratifiedSystem,
    effectivity_descent,
    exceptional_completion,
    find_negative_combination,
    negativity_coefficients,
    stratified_combination,
)
from .toric import (
    ToricDivisor,
    build_fan,
    curve_matrix,
    hj_expand,
    pairing,
    sections,
    verify_nakayama,
    verify_reflexive,
)
from .corpus import ade_matrix

__version__ = "0.1.0"
