"""Weighted tree automata over commutative semifields.

Exact bottom-up deterministic semantics, syntactic congruence of the
recognized weighted tree language, scalar bases, and construction of the
minimal equivalent bu-det automaton.
"""

from .semifield import (
    BOOLEAN,
    KINDS,
    MAXTIMES,
    RATIONAL,
    TROPICAL,
    SemifieldError,
    Weight,
    WeightSyntaxError,
    format_weight,
    one,
    parse_weight,
    zero,
)
from .terms import (
    RankedAlphabet,
    TermError,
    Tree,
    Z,
    compose,
    decompose_elementary,
    enumerate_contexts,
    enumerate_trees,
    format_tree,
    height,
    parse_context,
    parse_tree,
    substitute,
)
from .automaton import (
    DetValue,
    PreconditionError,
    Wta,
    WtaError,
    context_transform,
    dead_states,
    evaluate,
    format_wta,
    h_det,
    h_general,
    is_bu_deterministic,
    is_slim,
    is_total,
    parse_wta,
    reachable_states,
    remove_state,
    representative_trees,
    slim,
    state_of,
)
from .scalar import (
    DecompositionError,
    Dependent,
    Monomial,
    decompose,
    degree,
    format_monomial,
    pair_independent_subset,
    parse_monomial,
)
from .congruence import (
    BoundedContextOracle,
    ClassRep,
    SyntacticQuotient,
    brute_force_congruent,
    build_syntactic_quotient,
    class_of,
    congruent,
    dependency_oracle,
)
from .minimize import (
    build_wta_from_basis,
    candidate_set,
    equivalent,
    is_minimal,
    minimize,
    scalar_basis,
)

__version__ = "0.1.0"
