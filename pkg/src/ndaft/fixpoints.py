"""Fixpoints, Kripke-Kleene and stable semantics over any :class:`~ndaft.operators.Ndao`."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import CapacityError, DomainError, IterationError, atom_guard
from .lattice import FiniteLattice, Pair, State, ai_leq, minimal_elements, pair_leq
from .operators import Ndao


def iter_pairs(L: FiniteLattice, consistent_only: bool = True) -> Iterator[Pair]:
    """Pairs in (lower, upper) code order, optionally only consistent ones."""
    limit = 1 << atom_guard()
    if L.size > limit:
        raise CapacityError(f"pair scan over a carrier of {L.size} elements exceeds the guard ({limit})")
    for x in L.elements():
        ys = sorted(L.above(x)) if consistent_only else L.elements()
        for y in ys:
            yield Pair(x, y)


def _scan_domain(A: Ndao, consistent_only: bool) -> Iterator[Pair]:
    if A.domain == "consistent_only" and not consistent_only:
        raise DomainError(f"{A.name} is only defined on consistent pairs")
    return iter_pairs(A.lattice, consistent_only)


def fixpoints(A: Ndao, consistent_only: bool = True) -> list[Pair]:
    return [
        p for p in _scan_domain(A, consistent_only)
        if A.lower_contains(p.lower, p.upper, p.lower) and A.upper_contains(p.lower, p.upper, p.upper)
    ]


def information_minimal(L: FiniteLattice, pairs) -> list[Pair]:
    pairs = list(pairs)
    return [
        p for p in pairs
        if not any(q != p and pair_leq(L, q, p, "information") for q in pairs)
    ]


def kk_interpretations(A: Ndao, consistent_only: bool = True) -> list[Pair]:
    return information_minimal(A.lattice, fixpoints(A, consistent_only))


def complete_bound(A: Ndao, kind: str, fixed: int) -> frozenset:
    """Minimal fixpoints of the lower bound with upper frozen at ``fixed``
    (``kind='lower'``), or of the upper bound with lower frozen (``'upper'``)."""
    L = A.lattice
    L.check(fixed)
    restrict = A.domain == "consistent_only"
    if kind == "lower":
        cands = L.below(fixed) if restrict else L.elements()
        found = [x for x in cands if A.lower_contains(x, fixed, x)]
    elif kind == "upper":
        cands = L.above(fixed) if restrict else L.elements()
        found = [y for y in cands if A.upper_contains(fixed, y, y)]
    else:
        raise DomainError(f"unknown bound kind {kind!r}")
    return minimal_elements(L, found)


class StableCache:
    """Memoised complete lower/upper bounds for one operator."""

    def __init__(self, A: Ndao):
        self.A = A
        self._lower: dict[int, frozenset] = {}
        self._upper: dict[int, frozenset] = {}

    def lower(self, y: int) -> frozenset:
        if y not in self._lower:
            self._lower[y] = complete_bound(self.A, "lower", y)
        return self._lower[y]

    def upper(self, x: int) -> frozenset:
        if x not in self._upper:
            self._upper[x] = complete_bound(self.A, "upper", x)
        return self._upper[x]


def stable_apply(A: Ndao, pair, cache: StableCache | None = None) -> tuple[frozenset, frozenset]:
    cache = cache or StableCache(A)
    return cache.lower(pair[1]), cache.upper(pair[0])


def stable_fixpoints(A: Ndao, consistent_only: bool = True) -> list[Pair]:
    cache = StableCache(A)
    return [
        p for p in _scan_domain(A, consistent_only)
        if p.lower in cache.lower(p.upper) and p.upper in cache.upper(p.lower)
    ]


# ------------------------------------------------------------ states


@dataclass
class IterationTrace:
    states: list = field(default_factory=list)

    @property
    def monotone(self) -> bool:
        return all(ai_leq(a.lattice, a, b) for a, b in zip(self.states, self.states[1:]))

    def __len__(self):
        return len(self.states)

    def to_json(self, with_members: bool = False) -> list:
        return [dict(step=k, **s.to_json(with_members)) for k, s in enumerate(self.states)]


def state_apply(A: Ndao, S: State) -> State:
    """Apply ``A`` to every pair of generators and union the closures."""
    L = A.lattice
    lows: set = set()
    ups: set = set()
    used = 0
    for x in sorted(S.lower):
        for y in sorted(S.upper):
            if not A.in_domain(x, y):
                continue
            used += 1
            lows |= A.lower_generators(x, y)
            ups |= A.upper_generators(x, y)
    if not used and S.lower and S.upper:
        raise DomainError(f"{A.name}: every generator pair of {S.describe()} is inconsistent")
    return State.make(L, lows, ups)


def iterate_states(step: Callable[[State], State], start: State, what: str) -> tuple[State, IterationTrace]:
    L = start.lattice
    bound = L.size * L.size + 1
    trace = IterationTrace([start])
    current = start
    for _ in range(bound):
        nxt = step(current)
        if nxt == current:
            return current, trace
        trace.states.append(nxt)
        current = nxt
    raise IterationError(f"{what} did not stabilise within {bound} steps")


def kk_state(A: Ndao) -> tuple[State, IterationTrace]:
    return iterate_states(lambda S: state_apply(A, S), State.least_precise(A.lattice), "Kripke-Kleene iteration")


def stable_state_apply(A: Ndao, S: State, cache: StableCache | None = None) -> State:
    """The stable operator lifted to states.

    The stable operator is not monotone in general, so every member of the
    two closures is visited.  Its lower output depends only on the upper
    argument and vice versa, so the two halves are computed separately.
    """
    cache = cache or StableCache(A)
    L = A.lattice
    if not S.lower or not S.upper:
        return State(L, frozenset(), frozenset())
    lows: set = set()
    for y in S.down.members():
        lows |= cache.lower(y)
    ups: set = set()
    for x in S.up.members():
        ups |= cache.upper(x)
    return State.make(L, lows, ups)


def wf_state(A: Ndao) -> tuple[State, IterationTrace]:
    cache = StableCache(A)
    return iterate_states(
        lambda S: stable_state_apply(A, S, cache), State.least_precise(A.lattice), "well-founded iteration"
    )


def precision_compare(S1: State, S2: State) -> str:
    L = S1.lattice
    a, b = ai_leq(L, S1, S2), ai_leq(L, S2, S1)
    if a and b:
        return "equal"
    if a:
        return "less"
    if b:
        return "greater"
    return "incomparable"
