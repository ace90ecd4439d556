"""Well-founded semantics with disjunction, computed from reduct minimal models.

States are (up-set, down-set) pairs as elsewhere.  Each step takes the
members of both closures, collects minimal models of reducts, and filters
the lower side with a closed-world step: atoms that no member of the
down-set contains are taken to be false.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable

from .errors import DomainError, check_atom_guard
from .fixpoints import IterationTrace, iterate_states
from .lattice import PowersetLattice, State
from .program import Program
from .semantics import Interpretation, gl_reduct, minimal_two_valued_models


def _require_literal_bodies(P: Program):
    for k, r in enumerate(P.rules):
        if not r.disjunctively_normal:
            raise DomainError(f"needs literal-conjunction bodies; {P.rule_label(k)} is not one")


@lru_cache(maxsize=4096)
def _reduct_minimal_models(P: Program, y: int) -> frozenset:
    i = Interpretation.from_pair(P.lattice, (y, y))
    return minimal_two_valued_models(gl_reduct(P, i))


def ic_complete_fast(P: Program, y: int) -> frozenset:
    """Minimal two-valued models of the reduct of ``P`` at the exact pair (y, y)."""
    _require_literal_bodies(P)
    check_atom_guard(len(P.atoms), "reduct model enumeration")
    return _reduct_minimal_models(P, P.lattice.check(y))


def gamma(P: Program, X: Iterable[int]) -> frozenset:
    """Union of the per-element reduct minimal models (not re-minimised)."""
    out: set = set()
    for x in X:
        out |= ic_complete_fast(P, x)
    return frozenset(out)


def false_atoms(L: PowersetLattice, Y: Iterable[int]) -> int:
    covered = 0
    for y in Y:
        covered |= y
    return L.top & ~covered


def cwa_filter(L: PowersetLattice, X: Iterable[int], Y: Iterable[int]) -> frozenset:
    """Members of X avoiding every atom that no member of Y contains."""
    gone = false_atoms(L, Y)
    return frozenset(x for x in X if not x & gone)


def phi_apply(P: Program, S: State) -> State:
    _require_literal_bodies(P)
    L = P.lattice
    X = S.up.members()
    Y = S.down.members()
    return State.make(L, gamma(P, Y), gamma(P, cwa_filter(L, X, Y)))


def wfsd(P: Program) -> tuple[State, IterationTrace]:
    _require_literal_bodies(P)
    return iterate_states(lambda S: phi_apply(P, S), State.least_precise(P.lattice), "disjunctive well-founded iteration")
