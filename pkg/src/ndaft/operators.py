"""Non-deterministic operators and approximators over finite lattices.

An :class:`Ndao` maps a pair ``(x, y)`` to a family of lower bounds and a
family of upper bounds.  The program-based operators evaluate rule bodies
with a compiled two-bit encoding of the four truth values: a value is
described by whether it is at least C-or-T (``a``) and whether it is at
least U-or-T (``b``).  Atoms read ``a`` from ``x`` and ``b`` from ``y``,
negation maps ``(a, b)`` to ``(not b, not a)`` and the connectives act
componentwise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .errors import CapacityError, DomainError, ParseError, check_atom_guard
from .four import C, T, U
from .lattice import (
    FiniteLattice,
    Pair,
    PowersetLattice,
    hoare_leq,
    maximal_elements,
    minimal_elements,
    smyth_leq,
    sorted_family,
)
from .program import And, Atom, Not, Or, Program, literals

HITTING_GUARD = 16


# ------------------------------------------------------------ body compilation


def compile_body(f, L: PowersetLattice) -> Callable[[int, int], tuple[bool, bool]]:
    lits = literals(f)
    if lits is not None:
        pos = neg = 0
        ca = cb = True
        for lit in lits:
            if isinstance(lit, Atom):
                pos |= L.bit(lit.name)
            elif isinstance(lit, Not):
                neg |= L.bit(lit.arg.name)
            else:
                ca = ca and lit.value in (T, C)
                cb = cb and lit.value in (T, U)

        def conj(x, y):
            return (ca and not pos & ~x and not neg & y, cb and not pos & ~y and not neg & x)

        return conj
    if isinstance(f, Not):
        g = compile_body(f.arg, L)

        def negate(x, y):
            a, b = g(x, y)
            return not b, not a

        return negate
    if isinstance(f, (And, Or)):
        parts = [compile_body(a, L) for a in f.args]
        combine = all if isinstance(f, And) else any

        def junction(x, y):
            vals = [p(x, y) for p in parts]
            return combine(v[0] for v in vals), combine(v[1] for v in vals)

        return junction
    raise DomainError(f"cannot compile {f!r}")


class CompiledProgram:
    def __init__(self, P: Program):
        self.program = P
        self.lattice = P.lattice
        L = self.lattice
        self.heads = [L.from_atoms(r.head) for r in P.rules]
        self.bodies = [compile_body(r.body, L) for r in P.rules]

    def bounds(self, x: int, y: int) -> tuple[frozenset, frozenset]:
        lo, up = set(), set()
        for h, body in zip(self.heads, self.bodies):
            a, b = body(x, y)
            if a:
                lo.add(h)
            if b:
                up.add(h)
        return frozenset(lo), frozenset(up)

    def active(self, x: int) -> frozenset:
        return frozenset(h for h, body in zip(self.heads, self.bodies) if body(x, x)[0])


@lru_cache(maxsize=256)
def compiled(P: Program) -> CompiledProgram:
    return CompiledProgram(P)


# ------------------------------------------------------------ hitting sets


def _union(heads: Iterable[int]) -> int:
    u = 0
    for h in heads:
        u |= h
    return u


def hits_all(z: int, heads: Iterable[int]) -> bool:
    return all(z & h for h in heads)


def in_hitting_family(z: int, heads: frozenset) -> bool:
    """Membership in {z within the union of heads : z meets every head}."""
    return not z & ~_union(heads) and hits_all(z, heads)


def hitting_family(heads: frozenset) -> frozenset:
    u = _union(heads)
    if u.bit_count() > HITTING_GUARD:
        raise CapacityError(
            f"hitting-set expansion over {u.bit_count()} atoms exceeds the guard of {HITTING_GUARD}"
        )
    out = []
    z = u
    while True:
        if hits_all(z, heads):
            out.append(z)
        if z == 0:
            break
        z = (z - 1) & u
    return frozenset(out)


def minimal_hitting_sets(heads: frozenset) -> frozenset:
    """Berge's incremental transversal computation."""
    current = {0}
    for h in sorted(heads):
        nxt = set()
        for t in current:
            if t & h:
                nxt.add(t)
            else:
                rest = h
                while rest:
                    low = rest & -rest
                    nxt.add(t | low)
                    rest ^= low
        # drop non-minimal candidates
        ordered = sorted(nxt, key=lambda v: (v.bit_count(), v))
        kept: list[int] = []
        for t in ordered:
            if not any(k & ~t == 0 for k in kept):
                kept.append(t)
        current = set(kept)
    return frozenset(current)


# ------------------------------------------------------------ operators


class NdOperator:
    """A map from lattice elements to non-empty element families."""

    def __init__(self, lattice: FiniteLattice, apply: Callable[[int], frozenset], name: str = ""):
        self.lattice = lattice
        self._apply = apply
        self.name = name

    def __call__(self, x: int) -> frozenset:
        out = self._apply(self.lattice.check(x))
        if not out:
            raise DomainError(f"operator {self.name} returned an empty family at {self.lattice.name(x)}")
        return out

    def fixpoints(self) -> list[int]:
        return [x for x in self.lattice.elements() if x in self(x)]


class Ndao:
    """Base class: subclasses provide :meth:`apply_lower` and :meth:`apply_upper`.

    The membership and generator methods have generic fallbacks which
    materialise the families; subclasses override them where a symbolic
    test is cheaper.
    """

    name = "ndao"

    def __init__(self, lattice: FiniteLattice, domain: str = "all_pairs"):
        if domain not in ("all_pairs", "consistent_only"):
            raise DomainError(f"unknown domain {domain!r}")
        self.lattice = lattice
        self.domain = domain

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"

    def in_domain(self, x: int, y: int) -> bool:
        return self.domain == "all_pairs" or self.lattice.leq(x, y)

    def check_pair(self, x: int, y: int) -> None:
        L = self.lattice
        L.check(x)
        L.check(y)
        if not self.in_domain(x, y):
            raise DomainError(f"{self.name} is undefined on the inconsistent pair {L.format_pair((x, y))}")

    def apply_lower(self, x: int, y: int) -> frozenset:
        raise NotImplementedError

    def apply_upper(self, x: int, y: int) -> frozenset:
        raise NotImplementedError

    def apply(self, x: int, y: int) -> tuple[frozenset, frozenset]:
        return self.apply_lower(x, y), self.apply_upper(x, y)

    def lower_contains(self, x: int, y: int, z: int) -> bool:
        return z in self.apply_lower(x, y)

    def upper_contains(self, x: int, y: int, z: int) -> bool:
        return z in self.apply_upper(x, y)

    def lower_generators(self, x: int, y: int) -> frozenset:
        """Minimal elements of the lower family."""
        return minimal_elements(self.lattice, self.apply_lower(x, y))

    def upper_generators(self, x: int, y: int) -> frozenset:
        """Maximal elements of the upper family."""
        return maximal_elements(self.lattice, self.apply_upper(x, y))

    def upper_minimal(self, x: int, y: int) -> frozenset:
        return minimal_elements(self.lattice, self.apply_upper(x, y))


class HittingSetNdao(Ndao):
    """Families of hitting sets of two head families computed per pair."""

    def __init__(self, program: Program, heads: Callable[[int, int], tuple[frozenset, frozenset]],
                 domain: str, name: str):
        super().__init__(program.lattice, domain)
        self.program = program
        self._heads = heads
        self._memo: dict = {}
        self.name = name

    def head_bounds(self, x: int, y: int) -> tuple[frozenset, frozenset]:
        hit = self._memo.get((x, y))
        if hit is None:
            self.check_pair(x, y)
            hit = self._memo[x, y] = self._heads(x, y)
        return hit

    def apply_lower(self, x, y):
        return hitting_family(self.head_bounds(x, y)[0])

    def apply_upper(self, x, y):
        return hitting_family(self.head_bounds(x, y)[1])

    def lower_contains(self, x, y, z):
        return in_hitting_family(z, self.head_bounds(x, y)[0])

    def upper_contains(self, x, y, z):
        return in_hitting_family(z, self.head_bounds(x, y)[1])

    def lower_generators(self, x, y):
        return minimal_hitting_sets(self.head_bounds(x, y)[0])

    def upper_generators(self, x, y):
        # the union of the heads meets every head, so it is the unique maximum
        return frozenset([_union(self.head_bounds(x, y)[1])])

    def upper_minimal(self, x, y):
        return minimal_hitting_sets(self.head_bounds(x, y)[1])


def hd_two_valued(P: Program, x: int) -> frozenset:
    return compiled(P).active(P.lattice.check(x))


def ic_two_valued(P: Program, x: int) -> frozenset:
    return hitting_family(hd_two_valued(P, x))


def hd_bounds(P: Program, pair) -> tuple[frozenset, frozenset]:
    L = P.lattice
    x, y = L.check(pair[0]), L.check(pair[1])
    return compiled(P).bounds(x, y)


def ic_ndao(P: Program) -> HittingSetNdao:
    cp = compiled(P)
    return HittingSetNdao(P, cp.bounds, "all_pairs", "ic")


def dmt_ndao(P: Program) -> HittingSetNdao:
    cp = compiled(P)
    L = P.lattice
    cache: dict[int, frozenset] = {}

    def active(z):
        if z not in cache:
            cache[z] = cp.active(z)
        return cache[z]

    def heads(x, y):
        common = None
        every: set = set()
        for d in L.below(y & ~x):
            hd = active(x | d)
            common = hd if common is None else common & hd
            every |= hd
        return frozenset(common), frozenset(every)

    return HittingSetNdao(P, heads, "consistent_only", "dmt")


class MinimalIcNdao(Ndao):
    """Only the subset-minimal hitting sets; upper is lower with arguments swapped."""

    name = "ic-min"

    def __init__(self, program: Program):
        super().__init__(program.lattice, "all_pairs")
        self.program = program
        self._cp = compiled(program)

    def apply_lower(self, x, y):
        self.check_pair(x, y)
        return minimal_hitting_sets(self._cp.bounds(x, y)[0])

    def apply_upper(self, x, y):
        return self.apply_lower(y, x)


def ic_min_ndao(P: Program) -> MinimalIcNdao:
    return MinimalIcNdao(P)


def derived_nd_operator(A: Ndao) -> NdOperator:
    return NdOperator(A.lattice, lambda x: A.apply_lower(x, x), f"derived({A.name})")


# ------------------------------------------------------------ tables


class TableNdao(Ndao):
    """Operator given by a lookup table with an optional fallback rule."""

    name = "table"

    def __init__(self, lattice: FiniteLattice, table: dict, default=None, domain: str = "all_pairs"):
        super().__init__(lattice, domain)
        self.table = {
            (lattice.check(x), lattice.check(y)): (frozenset(lo), frozenset(up))
            for (x, y), (lo, up) in table.items()
        }
        self.default = default
        for key, (lo, up) in self.table.items():
            if not lo or not up:
                raise DomainError(f"table entry {lattice.format_pair(key)} has an empty family")

    def _row(self, x, y):
        self.check_pair(x, y)
        row = self.table.get((x, y))
        if row is not None:
            return row
        if self.default is None:
            raise DomainError(f"table has no entry for {self.lattice.format_pair((x, y))}")
        if self.default == "identity":
            return frozenset([x]), frozenset([y])
        return self.default

    def apply_lower(self, x, y):
        return self._row(x, y)[0]

    def apply_upper(self, x, y):
        return self._row(x, y)[1]


def table_ndao(lattice: FiniteLattice, table: dict, default=None, domain: str = "all_pairs") -> TableNdao:
    return TableNdao(lattice, table, default, domain)


def _parse_family(L: FiniteLattice, text: str, lineno: int) -> frozenset:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ParseError(f"expected a braced element list, got {text!r}", lineno, 1)
    try:
        return frozenset(L.parse_element(t) for t in text[1:-1].split(",") if t.strip())
    except DomainError as exc:
        raise ParseError(str(exc), lineno, 1) from None


def parse_table(text: str, lattice: FiniteLattice) -> TableNdao:
    """Read ``pair A B : lower {..} upper {..}`` lines.

    Two optional fallback forms cover pairs without their own line:
    ``default identity`` maps (w, z) to ({w}, {z}) and
    ``default : lower {..} upper {..}`` gives a constant row.
    """
    import re

    row = re.compile(r"lower\s*(\{[^}]*\})\s*upper\s*(\{[^}]*\})\s*$")
    table: dict = {}
    default = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = re.split(r"[%#]", raw, maxsplit=1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        words = head.split()
        if words == ["default", "identity"] and not sep:
            default = "identity"
            continue
        m = row.match(rest.strip()) if sep else None
        if not m:
            raise ParseError(f"cannot read table line {line!r}", lineno, 1)
        lo, up = _parse_family(lattice, m.group(1), lineno), _parse_family(lattice, m.group(2), lineno)
        if not lo or not up:
            raise ParseError("table families must be non-empty", lineno, 1)
        if words == ["default"]:
            default = (lo, up)
        elif len(words) == 3 and words[0] == "pair":
            try:
                key = (lattice.parse_element(words[1]), lattice.parse_element(words[2]))
            except DomainError as exc:
                raise ParseError(str(exc), lineno, 1) from None
            if key in table:
                raise ParseError(f"duplicate entry for pair {words[1]} {words[2]}", lineno, 1)
            table[key] = (lo, up)
        else:
            raise ParseError(f"cannot read table line {line!r}", lineno, 1)
    return TableNdao(lattice, table, default)


# ------------------------------------------------------------ property checks


@dataclass
class PropertyReport:
    ai_monotone: bool = True
    monotone_witness: dict | None = None
    exact: bool = True
    exact_witness: dict | None = None
    symmetric: bool = True
    symmetric_witness: dict | None = None
    consistent: bool = True
    consistent_witness: dict | None = None
    exhaustive: bool = True
    pairs_checked: int = 0
    comparisons_checked: int = 0
    notes: list = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return self.ai_monotone and self.exact and self.symmetric and self.consistent

    def to_json(self) -> dict:
        out = {}
        for key in ("ai_monotone", "exact", "symmetric", "consistent"):
            out[key] = getattr(self, key)
            wit = getattr(self, key.replace("ai_", "") + "_witness")
            if wit is not None:
                out[key + "_witness"] = wit
        out["domain_checked"] = {
            "exhaustive": self.exhaustive,
            "pairs": self.pairs_checked,
            "comparisons": self.comparisons_checked,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _fam_json(L, fam):
    return [L.element_json(e) for e in sorted_family(fam)]


def _pair_json(L, p):
    return [L.element_json(p[0]), L.element_json(p[1])]


def precision_order(A: Ndao) -> list[Pair]:
    """Domain pairs listed from least to most precise: lower ascending, upper descending."""
    L = A.lattice
    return [
        Pair(x, y)
        for x in sorted(L.elements(), key=lambda e: (L.rank(e), e))
        for y in sorted(L.elements(), key=lambda e: (-L.rank(e), e))
        if A.in_domain(x, y)
    ]


def check_properties(A: Ndao, max_carrier: int = 64, sample: int | None = None, seed: int = 0) -> PropertyReport:
    """Check monotonicity, exactness, symmetry and consistency of ``A``.

    Witnesses are the first failures in :func:`precision_order`.  With
    ``sample`` set, monotonicity is checked on that many random comparable
    pairs only and the report is flagged non-exhaustive.
    """
    L = A.lattice
    if sample is None and L.size > max_carrier:
        raise CapacityError(
            f"exhaustive property check over {L.size} elements exceeds the guard of {max_carrier}; use sampling"
        )
    rep = PropertyReport(exhaustive=sample is None)
    pairs = precision_order(A)
    rep.pairs_checked = len(pairs)
    gens: dict = {}

    def generators(p):
        if p not in gens:
            gens[p] = (A.lower_generators(*p), A.upper_generators(*p))
        return gens[p]

    up_key = lambda e: (L.rank(e), e)
    down_key = lambda e: (-L.rank(e), e)

    def comparable(p1):
        x1, y1 = p1
        return [
            Pair(x2, y2)
            for x2 in sorted(L.above(x1), key=up_key)
            for y2 in sorted(L.below(y1), key=down_key)
            if A.in_domain(x2, y2)
        ]

    if sample is None:
        candidates = ((p1, p2) for p1 in pairs for p2 in comparable(p1))
    else:
        rng = random.Random(seed)

        def draws():
            for _ in range(sample):
                p1 = rng.choice(pairs)
                yield p1, rng.choice(comparable(p1))

        candidates = draws()
    for p1, p2 in candidates:
        rep.comparisons_checked += 1
        (l1, u1), (l2, u2) = generators(p1), generators(p2)
        if not (smyth_leq(L, l1, l2) and hoare_leq(L, u2, u1)):
            rep.ai_monotone = False
            rep.monotone_witness = {
                "smaller": _pair_json(L, p1),
                "larger": _pair_json(L, p2),
                "smaller_output": [_fam_json(L, A.apply_lower(*p1)), _fam_json(L, A.apply_upper(*p1))],
                "larger_output": [_fam_json(L, A.apply_lower(*p2)), _fam_json(L, A.apply_upper(*p2))],
            }
            break

    for x in sorted(L.elements()):
        lo, up = A.apply_lower(x, x), A.apply_upper(x, x)
        if lo != up:
            rep.exact = False
            rep.exact_witness = {"element": L.element_json(x), "lower": _fam_json(L, lo), "upper": _fam_json(L, up)}
            break

    for x, y in sorted(pairs):
        if not A.in_domain(y, x):
            rep.symmetric = False
            rep.symmetric_witness = {
                "pair": _pair_json(L, (x, y)),
                "reason": "the swapped pair lies outside the operator's domain",
            }
            break
        lo, up_swapped = A.apply_lower(x, y), A.apply_upper(y, x)
        if lo != up_swapped:
            rep.symmetric = False
            rep.symmetric_witness = {
                "pair": _pair_json(L, (x, y)),
                "lower": _fam_json(L, lo),
                "upper_of_swapped": _fam_json(L, up_swapped),
            }
            break

    for x, y in sorted(pairs):
        if not L.leq(x, y):
            continue
        lo, up = generators((x, y))
        if not any(L.leq(w, z) for w in lo for z in up):
            rep.consistent = False
            rep.consistent_witness = {
                "pair": _pair_json(L, (x, y)),
                "lower": _fam_json(L, A.apply_lower(x, y)),
                "upper": _fam_json(L, A.apply_upper(x, y)),
            }
            break
    if A.domain == "consistent_only":
        rep.notes.append("monotonicity quantified over consistent pairs only")
    return rep


def program_ndao(P: Program, kind: str) -> Ndao:
    if kind == "ic":
        return ic_ndao(P)
    if kind == "ic-min":
        return ic_min_ndao(P)
    if kind == "dmt":
        return dmt_ndao(P)
    raise DomainError(f"unknown operator {kind!r}")


def check_program_guard(P: Program) -> None:
    check_atom_guard(len(P.atoms))

