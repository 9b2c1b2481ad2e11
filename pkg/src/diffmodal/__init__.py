"""Workbench for bimodal logics whose second modality ranges over the
inequality relation: formulas and named axioms, finite Kripke semantics,
graph oracles, filtrations, repairing constructions, and a bounded
countermodel search."""

from .decide import (
    LogicPreset,
    PRESET_IDS,
    Refuted,
    TheoremWithinBound,
    Unknown,
    Verdict,
    decide,
    frames_in_class,
    preset,
)
from .errors import (
    BadParameter,
    CapacityExceeded,
    GammaNotSubClosed,
    GammaNotSubsetPsi,
    NotAPartition,
    NotPointGenerated,
    ParseError,
    UnknownPoint,
    WorkbenchError,
)
from .filtration import (
    FiltrationResult,
    check_filtration_lemma,
    gamma_classes,
    largest_filtration,
    minimal_filtration,
    verify_filtration,
)
from .formula import (
    AXIOM_NAMES,
    BOT,
    TOP,
    Bottom,
    Diamond,
    DiffDiamond,
    Formula,
    Implies,
    Var,
    axiom,
    big_conj,
    big_disj,
    box,
    conj,
    diff_box,
    disj,
    everywhere,
    formula_sort_key,
    is_sub_closed,
    modal_depth,
    neg,
    node_count,
    parse,
    print_formula,
    somewhere,
    sub_closure,
    subformulas,
    substitute,
    variables,
)
from .graph import (
    Chromatic,
    FrameProperties,
    INFINITE,
    chromatic_number,
    chromatic_number_exhaustive,
    frame_properties,
    is_connected,
    is_proper,
    random_graph,
)
from .kripke import (
    DEFAULT_ALGEBRA_CAP,
    DEFAULT_SCHEME_CAP,
    DEFAULT_VALUATION_CAP,
    Frame,
    INEQUALITY,
    Model,
    check,
    definable_algebra,
    diff_expand,
    frame_satisfiable,
    frame_valid,
    is_diff_pointgen,
    model_true,
    scheme_true,
)
from .morphism import (
    PointMap,
    check_pmorphism,
    generated_subframe,
    repair,
    repair_irreflexive,
)

__version__ = "0.1.0"
