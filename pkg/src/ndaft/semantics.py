"""Definition-level semantics of disjunctive programs.

Everything here works directly from the definitions, on interpretations
given as two sets of atom names.  No bitset tricks are used.  This keeps
the module usable as an independent reference for the operator-based
engine, which computes the same notions much faster.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DomainError, check_atom_guard
from .four import AND, OR, C, F, T, TruthValue, U
from .lattice import PowersetLattice
from .program import And, Atom, Const, Formula, Not, Or, Program, Rule, literals


@dataclass(frozen=True)
class Interpretation:
    """A four-valued interpretation: atoms in ``lower`` are at least C or T,
    atoms in ``upper`` are at least U or T."""

    lower: frozenset
    upper: frozenset

    @classmethod
    def of(cls, lower: Iterable[str], upper: Iterable[str]) -> "Interpretation":
        return cls(frozenset(lower), frozenset(upper))

    @classmethod
    def from_pair(cls, L: PowersetLattice, pair) -> "Interpretation":
        return cls(frozenset(L.atoms_of(pair[0])), frozenset(L.atoms_of(pair[1])))

    def to_pair(self, L: PowersetLattice) -> tuple[int, int]:
        return L.from_atoms(self.lower), L.from_atoms(self.upper)

    @property
    def consistent(self) -> bool:
        return self.lower <= self.upper

    def value(self, atom: str) -> TruthValue:
        if atom in self.lower:
            return T if atom in self.upper else C
        return U if atom in self.upper else F

    def to_json(self) -> dict:
        return {"lower": sorted(self.lower), "upper": sorted(self.upper)}

    @classmethod
    def from_json(cls, obj: dict) -> "Interpretation":
        return cls.of(obj["lower"], obj["upper"])

    def __str__(self):
        fmt = lambda s: "{" + ",".join(sorted(s)) + "}"
        return f"({fmt(self.lower)}, {fmt(self.upper)})"


def eval_formula(i: Interpretation, f: Formula) -> TruthValue:
    if isinstance(f, Atom):
        return i.value(f.name)
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Not):
        return -eval_formula(i, f.arg)
    if isinstance(f, And):
        acc = T
        for a in f.args:
            acc = AND[acc, eval_formula(i, a)]
        return acc
    if isinstance(f, Or):
        acc = F
        for a in f.args:
            acc = OR[acc, eval_formula(i, a)]
        return acc
    raise DomainError(f"not a formula: {f!r}")


def head_value(i: Interpretation, rule: Rule) -> TruthValue:
    acc = F
    for a in rule.head:
        acc = OR[acc, i.value(a)]
    return acc


def _require_consistent(i: Interpretation, allow_inconsistent: bool):
    if not allow_inconsistent and not i.consistent:
        raise DomainError(f"interpretation {i} is not consistent")


def is_model(i: Interpretation, P: Program, allow_inconsistent: bool = False) -> bool:
    _require_consistent(i, allow_inconsistent)
    return all(eval_formula(i, r.body).leq_t(head_value(i, r)) for r in P.rules)


def is_weakly_supported(i: Interpretation, P: Program, allow_inconsistent: bool = False) -> bool:
    if not is_model(i, P, allow_inconsistent):
        return False
    for p in i.upper:
        v = i.value(p)
        if not any(p in r.head and v.leq_t(eval_formula(i, r.body)) for r in P.rules):
            return False
    return True


def is_supported(i: Interpretation, P: Program, allow_inconsistent: bool = False) -> bool:
    """A model in which every atom of ``lower`` has a rule with true body whose
    head meets ``lower`` only in that atom, and every atom of ``upper`` has a
    rule with body at least U whose head meets ``upper`` only in that atom."""
    if not is_model(i, P, allow_inconsistent):
        return False
    bodies = [(r, eval_formula(i, r.body)) for r in P.rules]
    for p in i.lower:
        if not any(
            p in r.head and v in (T, C) and i.lower.intersection(r.head) == {p} for r, v in bodies
        ):
            return False
    for p in i.upper:
        if not any(
            p in r.head and v in (T, U) and i.upper.intersection(r.head) == {p} for r, v in bodies
        ):
            return False
    return True


def enumerate_interpretations(P: Program, consistent_only: bool = True) -> Iterator[Interpretation]:
    """All interpretations over the universe, ordered by (lower, upper) bitset code."""
    check_atom_guard(len(P.atoms), "interpretation enumeration")
    L = P.lattice
    for x in range(L.size):
        for y in range(L.size):
            if consistent_only and x & ~y:
                continue
            yield Interpretation.from_pair(L, (x, y))


def two_valued_models(P: Program) -> frozenset:
    """Bitset codes (over ``P.lattice``) of all two-valued models of a negation-free program."""
    if not P.positive:
        bad = next(k for k, r in enumerate(P.rules) if not r.positive)
        raise DomainError(f"two_valued_models needs a negation-free program; {P.rule_label(bad)} has negation")
    check_atom_guard(len(P.atoms), "model enumeration")
    L = P.lattice
    out = []
    for x in range(L.size):
        i = Interpretation.from_pair(L, (x, x))
        if all(eval_formula(i, r.body) != T or any(a in i.lower for a in r.head) for r in P.rules):
            out.append(x)
    return frozenset(out)


def minimal_two_valued_models(P: Program) -> frozenset:
    models = two_valued_models(P)
    return frozenset(m for m in models if not any(o != m and o & ~m == 0 for o in models))


def gl_reduct(P: Program, i: Interpretation) -> Program:
    """Replace every negated atom by its truth value under ``i``."""
    _require_consistent(i, False)
    rules = []
    for k, r in enumerate(P.rules):
        lits = literals(r.body)
        if lits is None:
            raise DomainError(f"the reduct needs literal-conjunction bodies; {P.rule_label(k)} is not one")
        new = tuple(Const(-i.value(l.arg.name)) if isinstance(l, Not) else l for l in lits)
        body = new[0] if len(new) == 1 else And(new)
        rules.append(Rule(r.head, body))
    return Program(rules, P.atoms)


def is_three_valued_stable(i: Interpretation, P: Program, among: str = "all") -> bool:
    """``i`` is a truth-minimal model of its own reduct.

    ``among='all'`` compares against every interpretation truth-below ``i``,
    inconsistent ones included; ``among='consistent'`` only against consistent
    ones. Only the first matches the stable fixpoints of the ic operator.
    """
    if among not in ("all", "consistent"):
        raise DomainError(f"among must be 'all' or 'consistent', not {among!r}")
    reduct = gl_reduct(P, i)
    if not is_model(i, reduct):
        return False
    L = P.lattice
    x, y = i.to_pair(L)
    for y2 in L.below(y):
        for x2 in L.below(x if among == "all" else x & y2):
            if (x2, y2) == (x, y):
                continue
            if is_model(Interpretation.from_pair(L, (x2, y2)), reduct, allow_inconsistent=True):
                return False
    return True
