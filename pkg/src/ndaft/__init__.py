"""Approximation fixpoint theory for non-deterministic operators on finite lattices."""

from .errors import CapacityError, DomainError, IterationError, NdaftError, ParseError
from .four import TruthValue, truth_connective
from .lattice import (
    ExplicitLattice,
    FiniteLattice,
    Pair,
    PowersetLattice,
    State,
    ai_leq,
    closure,
    convex_members,
    extremal_elements,
    family_leq,
    load_lattice,
    pair_leq,
    parse_lattice,
    si_leq,
    state_bound,
)
from .program import Program, Rule, parse_program, load_program
from .semantics import (
    Interpretation,
    enumerate_interpretations,
    eval_formula,
    gl_reduct,
    is_model,
    is_supported,
    is_three_valued_stable,
    is_weakly_supported,
    two_valued_models,
)
from .operators import (
    Ndao,
    NdOperator,
    check_properties,
    derived_nd_operator,
    dmt_ndao,
    hd_bounds,
    hd_two_valued,
    ic_min_ndao,
    ic_ndao,
    ic_two_valued,
    parse_table,
    table_ndao,
)
from .fixpoints import (
    complete_bound,
    fixpoints,
    kk_interpretations,
    kk_state,
    precision_compare,
    stable_apply,
    stable_fixpoints,
    state_apply,
    wf_state,
)
from .wfsd import cwa_filter, gamma, ic_complete_fast, phi_apply, wfsd
from .oracle import GenConfig, det_kk, det_stable_fixpoints, det_wf, random_program, run_theorem_suite

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "DomainError",
    "IterationError",
    "NdaftError",
    "ParseError",
    "TruthValue",
    "truth_connective",
    "ExplicitLattice",
    "FiniteLattice",
    "Pair",
    "PowersetLattice",
    "State",
    "ai_leq",
    "closure",
    "convex_members",
    "extremal_elements",
    "family_leq",
    "load_lattice",
    "pair_leq",
    "parse_lattice",
    "si_leq",
    "state_bound",
    "Program",
    "Rule",
    "parse_program",
    "load_program",
    "Interpretation",
    "enumerate_interpretations",
    "eval_formula",
    "gl_reduct",
    "is_model",
    "is_supported",
    "is_three_valued_stable",
    "is_weakly_supported",
    "two_valued_models",
    "Ndao",
    "NdOperator",
    "check_properties",
    "derived_nd_operator",
    "dmt_ndao",
    "hd_bounds",
    "hd_two_valued",
    "ic_min_ndao",
    "ic_ndao",
    "ic_two_valued",
    "parse_table",
    "table_ndao",
    "complete_bound",
    "fixpoints",
    "kk_interpretations",
    "kk_state",
    "precision_compare",
    "stable_apply",
    "stable_fixpoints",
    "state_apply",
    "wf_state",
    "cwa_filter",
    "gamma",
    "ic_complete_fast",
    "phi_apply",
    "wfsd",
    "GenConfig",
    "det_kk",
    "det_stable_fixpoints",
    "det_wf",
    "random_program",
    "run_theorem_suite",
]
