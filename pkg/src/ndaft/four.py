"""Belnap's four truth values with their truth and information orders."""

from __future__ import annotations

from enum import Enum

from .errors import DomainError


class TruthValue(Enum):
    T = "T"
    F = "F"
    U = "U"
    C = "C"

    def __repr__(self):
        return f"TruthValue.{self.value}"

    def __str__(self):
        return self.value

    def leq_t(self, other: "TruthValue") -> bool:
        return (self, other) in _TRUTH_LEQ

    def leq_i(self, other: "TruthValue") -> bool:
        return (self, other) in _INFO_LEQ

    def __neg__(self) -> "TruthValue":
        return _NEG[self]


T, F, U, C = TruthValue.T, TruthValue.F, TruthValue.U, TruthValue.C
VALUES = (T, F, U, C)


def _reflexive_transitive(pairs):
    rel = {(v, v) for v in VALUES} | set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return frozenset(rel)


# covering relations of the two diamonds
_TRUTH_LEQ = _reflexive_transitive([(F, U), (F, C), (U, T), (C, T)])
_INFO_LEQ = _reflexive_transitive([(U, F), (U, T), (F, C), (T, C)])
_NEG = {T: F, F: T, U: U, C: C}


def _bound(a: TruthValue, b: TruthValue, leq, greatest: bool) -> TruthValue:
    if greatest:
        cands = [v for v in VALUES if leq(v, a) and leq(v, b)]
        return next(v for v in cands if all(leq(w, v) for w in cands))
    cands = [v for v in VALUES if leq(a, v) and leq(b, v)]
    return next(v for v in cands if all(leq(v, w) for w in cands))


def glb_t(a, b):
    return _bound(a, b, TruthValue.leq_t, True)


def lub_t(a, b):
    return _bound(a, b, TruthValue.leq_t, False)


def glb_i(a, b):
    return _bound(a, b, TruthValue.leq_i, True)


def lub_i(a, b):
    return _bound(a, b, TruthValue.leq_i, False)


AND = {(a, b): glb_t(a, b) for a in VALUES for b in VALUES}
OR = {(a, b): lub_t(a, b) for a in VALUES for b in VALUES}


def truth_connective(kind: str, a: TruthValue, b: TruthValue | None = None) -> TruthValue:
    """Apply ``neg``, ``and``/``glb_t`` or ``or``/``lub_t``."""
    if kind == "neg":
        if b is not None:
            raise DomainError("neg is unary")
        return -a
    if b is None:
        raise DomainError(f"{kind} needs two arguments")
    if kind in ("and", "glb_t"):
        return AND[a, b]
    if kind in ("or", "lub_t"):
        return OR[a, b]
    raise DomainError(f"unknown connective {kind!r}")
