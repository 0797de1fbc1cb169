"""Matching patterns with variables against words under Hamming distance.

A pattern mixes terminal letters with variables; a substitution maps
every variable to a word (possibly empty) consistently across its
occurrences.  This package computes the minimum number of mismatches
over all substitutions, exactly for the tractable pattern classes
(regular, single-variable, non-crossing, one repeated variable, k-local)
and approximately beyond, plus generators for the hard instance
families that justify the class boundaries.
"""

from .classify import (
    PatternClass,
    classify,
    locality,
    scope_coincidence_degree,
    validate_marking_sequence,
)
from .core import (
    INFINITE,
    BudgetExceeded,
    Distance,
    InvalidWitness,
    LengthInfeasible,
    LengthMismatch,
    MissingVariable,
    NotKLocal,
    NotNonCross,
    NotOneRepVar,
    NotRegular,
    ParseError,
    Pattern,
    Substitution,
    Symbol,
    UnsupportedClass,
    Var,
    VarpatError,
    Word,
    apply_substitution,
    hamming_distance,
    is_finite,
    pattern_of,
    peel_affixes,
)
from .formats import (
    AsciiCodec,
    Instance,
    dumps_instance,
    instance_digest,
    loads_instance,
    parse_text_instance,
    render_pattern_text,
)
from .hardness import (
    CpInstance,
    OvInstance,
    cp_to_1repvar,
    ov_to_reg,
    sample_cp,
    sample_ov,
    solve_cp_naive,
    solve_ov_naive,
)
from .klocal import (
    AlignmentTable,
    MarkingSequence,
    estimate_state_space,
    find_marking_sequence,
    klocal_tables,
    min_mismatch_klocal,
)
from .lcs import LcsIndex, bounded_mismatch, sliding_mismatch_array
from .noncross import decompose_noncross, min_mismatch_noncross
from .onerep import (
    OneRepDecomposition,
    OneRepResult,
    PtasConfig,
    approx2_1repvar,
    decompose_one_rep,
    min_mismatch_1repvar,
    ptas_1repvar,
    ptas_ratio,
)
from .oracle import OracleResult, brute_force_min_mismatch
from .regular import (
    RegularPattern,
    RegularSolve,
    SufMatrix,
    min_mismatch_reg,
    mismatch_reg,
    mismatch_reg_dp,
    solve_regular,
)
from .sampler import random_instance, random_pattern, random_word
from .solve import SolveResult, solve
from .unary import MedianResult, median_string, min_mismatch_1var

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
