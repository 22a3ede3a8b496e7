"""Exact symbolic toolkit for row-shift operator algebras on rational
function fields, their divided-difference forms, and windowed evaluation
modules over shifted-point lattices."""

from ._kernel import KERNEL_NAME
from ._ratio import QQ
from .combinat import (
    RowPermutation,
    YoungSubgroup,
    canonical_word,
    cells_of,
    check_shape,
    render_word,
    shortest_coset_reps,
    stable_sorting_perm,
    word_is_reduced,
    word_to_perm,
)
from .divdiff import (
    NilHecke,
    apply_word,
    chain_word,
    generators_ddiff_form,
    leibniz_parts,
    partial,
    partial_apply_rf,
    partial_for_perm,
    partial_simple,
    partial_word,
)
from .errors import (
    DivisionByZero,
    HypothesisViolation,
    InvalidComposition,
    InvalidMove,
    InvalidPair,
    InvalidSingularSetup,
    InvalidSubgroup,
    JobSpecError,
    NotASubgroup,
    NotInvariantInput,
    OgzError,
    ParseError,
    RegularityError,
    SingularSubstitution,
    WindowLeakage,
    WindowRankError,
)
from .exactalg import (
    Polynomial,
    RationalFunction,
    Ring,
    elementary_symmetric,
    is_row_symmetric,
    is_scalar,
    render_poly,
)
from .gzmod import (
    ComponentGraph,
    EvalPoint,
    Functional,
    ModuleWindow,
    Orbit,
    ProbeReport,
    SetupReport,
    build_basis_B,
    canonical_representatives,
    component_graph,
    conjugation_check,
    eval_functional,
    eval_rf_at,
    gamma_eigenvalue,
    ladder_point_expansion,
    simplicity_probe,
    singularity_setup_check,
    vanishing_check,
)
from .latwalk import (
    ArrowCheck,
    WalkReport,
    classify_move,
    find_path,
    parse_walk,
    render_walk,
    state_partition,
    validate_walk,
)
from .skewops import (
    AffineSymmetry,
    Generators,
    SkewOperator,
    agree_on_invariants,
    apply_to_invariant,
    commutator,
    invariant_family,
    random_invariant,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSymmetry",
    "ArrowCheck",
    "ComponentGraph",
    "DivisionByZero",
    "EvalPoint",
    "Functional",
    "Generators",
    "HypothesisViolation",
    "InvalidComposition",
    "InvalidMove",
    "InvalidPair",
    "InvalidSingularSetup",
    "InvalidSubgroup",
    "JobSpecError",
    "KERNEL_NAME",
    "ModuleWindow",
    "NilHecke",
    "NotASubgroup",
    "NotInvariantInput",
    "OgzError",
    "Orbit",
    "ParseError",
    "Polynomial",
    "ProbeReport",
    "QQ",
    "RationalFunction",
    "RegularityError",
    "Ring",
    "RowPermutation",
    "SetupReport",
    "SingularSubstitution",
    "SkewOperator",
    "WalkReport",
    "WindowLeakage",
    "WindowRankError",
    "YoungSubgroup",
    "agree_on_invariants",
    "apply_to_invariant",
    "apply_word",
    "build_basis_B",
    "canonical_representatives",
    "canonical_word",
    "cells_of",
    "chain_word",
    "check_shape",
    "classify_move",
    "commutator",
    "component_graph",
    "conjugation_check",
    "elementary_symmetric",
    "eval_functional",
    "eval_rf_at",
    "find_path",
    "gamma_eigenvalue",
    "generators_ddiff_form",
    "invariant_family",
    "is_row_symmetric",
    "is_scalar",
    "ladder_point_expansion",
    "leibniz_parts",
    "parse_walk",
    "partial",
    "partial_apply_rf",
    "partial_for_perm",
    "partial_simple",
    "partial_word",
    "random_invariant",
    "render_poly",
    "render_walk",
    "render_word",
    "shortest_coset_reps",
    "simplicity_probe",
    "singularity_setup_check",
    "stable_sorting_perm",
    "state_partition",
    "validate_walk",
    "vanishing_check",
    "word_is_reduced",
    "word_to_perm",
]
