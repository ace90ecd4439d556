"""Finite complete lattices, element families and antichain-encoded states.

Two lattice kinds are supported.  A :class:`PowersetLattice` has subsets of
an atom universe as elements, encoded as Python ``int`` bitsets where bit
``i`` stands for the ``i``-th atom in lexicographic order.  An
:class:`ExplicitLattice` has named nodes numbered ``0..n-1`` and an order
given by a covering relation.

Families of elements are plain ``frozenset`` objects.  Anything that is
printed or serialised goes through :func:`sorted_family`, which orders
elements by their integer code, so output is deterministic.

A :class:`State` is an up-set paired with a down-set.  It is stored as the
minimal generators of the up-set and the maximal generators of the
down-set, and read as the convex set of elements lying between them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .errors import CapacityError, DEFAULT_CARRIER_GUARD, DomainError, ParseError

Element = int
Family = frozenset


class Pair(NamedTuple):
    """A (lower, upper) pair of lattice elements."""

    lower: int
    upper: int


class FiniteLattice:
    """Common interface of the two lattice kinds."""

    kind: str = "abstract"
    size: int
    bot: int
    top: int

    def leq(self, a: int, b: int) -> bool:
        raise NotImplementedError

    def meet(self, a: int, b: int) -> int:
        raise NotImplementedError

    def join(self, a: int, b: int) -> int:
        raise NotImplementedError

    def rank(self, a: int) -> int:
        """An integer key that strictly increases along ``<``."""
        raise NotImplementedError

    def name(self, a: int) -> str:
        raise NotImplementedError

    def parse_element(self, token: str) -> int:
        raise NotImplementedError

    def element_json(self, a: int):
        raise NotImplementedError

    def element_from_json(self, obj) -> int:
        raise NotImplementedError

    def bound(self, a: int, b: int, kind: str) -> int:
        self.check(a)
        self.check(b)
        if kind == "meet":
            return self.meet(a, b)
        if kind == "join":
            return self.join(a, b)
        raise DomainError(f"unknown bound kind {kind!r}")

    def elements(self) -> range:
        return range(self.size)

    def check(self, a: int) -> int:
        if not isinstance(a, int) or a < 0 or a >= self.size:
            raise DomainError(f"{a!r} is not an element of this lattice")
        return a

    def is_consistent(self, pair: tuple[int, int]) -> bool:
        return self.leq(pair[0], pair[1])

    def below(self, a: int) -> Iterator[int]:
        """All elements z with z <= a."""
        return (z for z in self.elements() if self.leq(z, a))

    def above(self, a: int) -> Iterator[int]:
        return (z for z in self.elements() if self.leq(a, z))

    def format_family(self, family: Iterable[int]) -> str:
        return "{" + ", ".join(self.name(e) for e in sorted_family(family)) + "}"

    def format_pair(self, pair: tuple[int, int]) -> str:
        return f"({self.name(pair[0])}, {self.name(pair[1])})"


class PowersetLattice(FiniteLattice):
    """The subsets of a finite atom universe ordered by inclusion."""

    kind = "powerset"

    def __init__(self, atoms: Iterable[str]):
        self.atoms: tuple[str, ...] = tuple(sorted(set(atoms)))
        self.index = {a: i for i, a in enumerate(self.atoms)}
        self.n = len(self.atoms)
        self.size = 1 << self.n
        self.bot = 0
        self.top = self.size - 1

    def __repr__(self):
        return f"PowersetLattice({list(self.atoms)!r})"

    def __eq__(self, other):
        return isinstance(other, PowersetLattice) and other.atoms == self.atoms

    def __hash__(self):
        return hash(("powerset", self.atoms))

    def leq(self, a, b):
        return a & ~b == 0

    def meet(self, a, b):
        return a & b

    def join(self, a, b):
        return a | b

    def rank(self, a):
        return a.bit_count()

    def below(self, a):
        # submasks of a, in increasing integer order
        subs = []
        s = a
        while True:
            subs.append(s)
            if s == 0:
                break
            s = (s - 1) & a
        return iter(reversed(subs))

    def above(self, a):
        rest = self.top & ~a
        return (a | s for s in self.below(rest))

    def bit(self, atom: str) -> int:
        try:
            return 1 << self.index[atom]
        except KeyError:
            raise DomainError(f"atom {atom!r} is not in the universe {list(self.atoms)}") from None

    def from_atoms(self, atoms: Iterable[str]) -> int:
        out = 0
        for a in atoms:
            out |= self.bit(a)
        return out

    def atoms_of(self, a: int) -> list[str]:
        return [self.atoms[i] for i in range(self.n) if a >> i & 1]

    def name(self, a):
        return "{" + ",".join(self.atoms_of(a)) + "}"

    def parse_element(self, token):
        token = token.strip()
        if not (token.startswith("{") and token.endswith("}")):
            raise DomainError(f"expected a braced atom set, got {token!r}")
        inner = token[1:-1].strip()
        return self.from_atoms(t.strip() for t in inner.split(",") if t.strip())

    def element_json(self, a):
        return self.atoms_of(a)

    def element_from_json(self, obj):
        return self.from_atoms(obj)


class ExplicitLattice(FiniteLattice):
    """A lattice given by named nodes and a covering relation."""

    kind = "explicit"

    def __init__(self, names: Iterable[str], covers: Iterable[tuple[str, str]]):
        self.names: tuple[str, ...] = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise DomainError("duplicate node names")
        if not self.names:
            raise DomainError("a lattice needs at least one node")
        self.index = {a: i for i, a in enumerate(self.names)}
        n = self.size = len(self.names)
        up = [1 << i for i in range(n)]
        for a, b in covers:
            if a not in self.index or b not in self.index:
                raise DomainError(f"leq {a} {b} mentions an undeclared node")
            up[self.index[a]] |= 1 << self.index[b]
        # transitive closure (Warshall on bitsets)
        for k in range(n):
            bk = 1 << k
            for i in range(n):
                if up[i] & bk:
                    up[i] |= up[k]
        self._up = up
        self._down = [sum(1 << i for i in range(n) if up[i] >> j & 1) for j in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if up[i] >> j & 1 and up[j] >> i & 1:
                    raise DomainError(f"order is not antisymmetric: {self.names[i]} and {self.names[j]}")
        self._meet = [[0] * n for _ in range(n)]
        self._join = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                self._meet[i][j] = self._extreme(self._down[i] & self._down[j], greatest=True, what=(i, j))
                self._join[i][j] = self._extreme(up[i] & up[j], greatest=False, what=(i, j))
        self.bot = self._meet_all()
        self.top = self._join_all()

    def _extreme(self, mask: int, greatest: bool, what) -> int:
        cands = [k for k in range(self.size) if mask >> k & 1]
        for k in cands:
            if all(self.leq(c, k) if greatest else self.leq(k, c) for c in cands):
                return k
        kind = "meet" if greatest else "join"
        a, b = (self.names[w] for w in what)
        raise DomainError(f"not a lattice: {a} and {b} have no {kind}")

    def _meet_all(self):
        acc = 0
        for k in range(1, self.size):
            acc = self._meet[acc][k]
        return acc

    def _join_all(self):
        acc = 0
        for k in range(1, self.size):
            acc = self._join[acc][k]
        return acc

    def __repr__(self):
        return f"ExplicitLattice({list(self.names)!r})"

    def leq(self, a, b):
        return bool(self._up[a] >> b & 1)

    def meet(self, a, b):
        return self._meet[a][b]

    def join(self, a, b):
        return self._join[a][b]

    def rank(self, a):
        return self._down[a].bit_count()

    def name(self, a):
        return self.names[a]

    def parse_element(self, token):
        token = token.strip()
        if token not in self.index:
            raise DomainError(f"unknown lattice element {token!r}")
        return self.index[token]

    def element_json(self, a):
        return self.names[a]

    def element_from_json(self, obj):
        return self.parse_element(obj)


_NAME = re.compile(r"[^\s{},:]+$")


def parse_lattice(text: str) -> ExplicitLattice:
    """Read ``node a`` and ``leq a b`` lines (``%`` or ``#`` start a comment)."""
    names: list[str] = []
    covers: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = re.split(r"[%#]", raw, maxsplit=1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "node" and len(parts) >= 2:
            for nm in parts[1:]:
                if not _NAME.match(nm):
                    raise ParseError(f"bad node name {nm!r}", lineno, raw.find(nm) + 1)
                names.append(nm)
        elif parts[0] == "leq" and len(parts) == 3:
            covers.append((parts[1], parts[2]))
        else:
            raise ParseError(f"expected 'node NAME' or 'leq A B', got {line!r}", lineno, 1)
    try:
        return ExplicitLattice(names, covers)
    except DomainError as exc:
        raise ParseError(str(exc)) from None


def load_lattice(path) -> ExplicitLattice:
    with open(path, encoding="utf-8") as fh:
        return parse_lattice(fh.read())


# ---------------------------------------------------------------- families


def sorted_family(family: Iterable[int]) -> list[int]:
    return sorted(set(family))


def minimal_elements(L: FiniteLattice, family: Iterable[int]) -> frozenset:
    kept: list[int] = []
    for e in sorted(set(family), key=lambda v: (L.rank(v), v)):
        if not any(L.leq(k, e) for k in kept):
            kept.append(e)
    return frozenset(kept)


def maximal_elements(L: FiniteLattice, family: Iterable[int]) -> frozenset:
    kept: list[int] = []
    for e in sorted(set(family), key=lambda v: (-L.rank(v), v)):
        if not any(L.leq(e, k) for k in kept):
            kept.append(e)
    return frozenset(kept)


def extremal_elements(L: FiniteLattice, family: Iterable[int], kind: str) -> frozenset:
    if kind == "minimal":
        return minimal_elements(L, family)
    if kind == "maximal":
        return maximal_elements(L, family)
    raise DomainError(f"unknown extremal kind {kind!r}")


def smyth_leq(L: FiniteLattice, X: Iterable[int], Y: Iterable[int]) -> bool:
    X = tuple(X)
    return all(any(L.leq(x, y) for x in X) for y in Y)


def hoare_leq(L: FiniteLattice, X: Iterable[int], Y: Iterable[int]) -> bool:
    Y = tuple(Y)
    return all(any(L.leq(x, y) for y in Y) for x in X)


def family_leq(L: FiniteLattice, X, Y, order: str) -> bool:
    if order == "smyth":
        return smyth_leq(L, X, Y)
    if order == "hoare":
        return hoare_leq(L, X, Y)
    raise DomainError(f"unknown family order {order!r}")


def _halves(S):
    if isinstance(S, State):
        return S.lower, S.upper
    return S[0], S[1]


def ai_leq(L: FiniteLattice, S1, S2) -> bool:
    """Precision order on (lower family, upper family) pairs or on states."""
    X1, Y1 = _halves(S1)
    X2, Y2 = _halves(S2)
    return smyth_leq(L, X1, X2) and hoare_leq(L, Y2, Y1)


def pair_leq(L: FiniteLattice, p1, p2, order: str = "information") -> bool:
    if order == "information":
        return L.leq(p1[0], p2[0]) and L.leq(p2[1], p1[1])
    if order == "truth":
        return L.leq(p1[0], p2[0]) and L.leq(p1[1], p2[1])
    raise DomainError(f"unknown pair order {order!r}")


def si_leq(L: FiniteLattice, P1: Iterable, P2: Iterable) -> bool:
    P1 = tuple(P1)
    return all(any(pair_leq(L, p, q) for p in P1) for q in P2)


# ---------------------------------------------------------------- closures


@dataclass(frozen=True)
class Closure:
    """Up- or down-closure of a family, kept as its generating antichain."""

    lattice: FiniteLattice = field(compare=False, hash=False, repr=False)
    antichain: frozenset
    direction: str

    def __contains__(self, z: int) -> bool:
        if self.direction == "up":
            return any(self.lattice.leq(g, z) for g in self.antichain)
        return any(self.lattice.leq(z, g) for g in self.antichain)

    def members(self, guard: int = DEFAULT_CARRIER_GUARD) -> list[int]:
        _check_carrier(self.lattice, guard)
        if self.lattice.kind == "powerset":
            found = set()
            for g in self.antichain:
                found.update(self.lattice.above(g) if self.direction == "up" else self.lattice.below(g))
            return sorted(found)
        return [z for z in self.lattice.elements() if z in self]


def closure(L: FiniteLattice, family: Iterable[int], direction: str) -> Closure:
    if direction == "up":
        return Closure(L, minimal_elements(L, family), "up")
    if direction == "down":
        return Closure(L, maximal_elements(L, family), "down")
    raise DomainError(f"unknown closure direction {direction!r}")


def _check_carrier(L: FiniteLattice, guard: int) -> None:
    if L.size > guard:
        raise CapacityError(f"carrier of {L.size} elements exceeds the enumeration guard of {guard}")


# ---------------------------------------------------------------- states


@dataclass(frozen=True)
class State:
    """An up-set times a down-set, in canonical antichain form.

    Build states with :meth:`make` so that the antichains are canonical;
    equality then coincides with equality of the represented pair of sets.
    """

    lattice: FiniteLattice = field(compare=False, hash=False, repr=False)
    lower: frozenset
    upper: frozenset

    @classmethod
    def make(cls, L: FiniteLattice, lowers: Iterable[int], uppers: Iterable[int]) -> "State":
        return cls(L, minimal_elements(L, lowers), maximal_elements(L, uppers))

    @classmethod
    def least_precise(cls, L: FiniteLattice) -> "State":
        return cls(L, frozenset([L.bot]), frozenset([L.top]))

    @classmethod
    def from_pair(cls, L: FiniteLattice, x: int, y: int) -> "State":
        return cls(L, frozenset([x]), frozenset([y]))

    @property
    def up(self) -> Closure:
        return Closure(self.lattice, self.lower, "up")

    @property
    def down(self) -> Closure:
        return Closure(self.lattice, self.upper, "down")

    def __contains__(self, z: int) -> bool:
        return z in self.up and z in self.down

    def members(self, guard: int = DEFAULT_CARRIER_GUARD) -> list[int]:
        return convex_members(self.lattice, self, guard)

    def has_consistent_pair(self) -> bool:
        L = self.lattice
        return any(L.leq(l, u) for l in self.lower for u in self.upper)

    def is_tight(self) -> bool:
        """Every generator lies in the represented convex set."""
        L = self.lattice
        return all(any(L.leq(l, u) for u in self.upper) for l in self.lower) and all(
            any(L.leq(l, u) for l in self.lower) for u in self.upper
        )

    def to_json(self, with_members: bool = False, guard: int = DEFAULT_CARRIER_GUARD) -> dict:
        L = self.lattice
        out = {
            "lower_antichain": [L.element_json(e) for e in sorted_family(self.lower)],
            "upper_antichain": [L.element_json(e) for e in sorted_family(self.upper)],
        }
        if with_members:
            out["convex_members"] = [L.element_json(e) for e in self.members(guard)]
        return out

    @classmethod
    def from_json(cls, L: FiniteLattice, obj: dict) -> "State":
        return cls.make(
            L,
            (L.element_from_json(e) for e in obj["lower_antichain"]),
            (L.element_from_json(e) for e in obj["upper_antichain"]),
        )

    def describe(self) -> str:
        L = self.lattice
        return f"up {L.format_family(self.lower)} x down {L.format_family(self.upper)}"


def state_bound(states: Iterable[State], kind: str) -> State:
    states = list(states)
    if not states:
        raise DomainError("state_bound needs at least one state")
    L = states[0].lattice
    if kind == "glb":
        lowers = [g for s in states for g in s.lower]
        uppers = [g for s in states for g in s.upper]
        return State.make(L, lowers, uppers)
    if kind == "lub":
        acc = states[0]
        for s in states[1:]:
            # intersections of principal up-sets are generated by joins, down-sets by meets
            lows = [L.join(a, b) for a in acc.lower for b in s.lower]
            ups = [L.meet(a, b) for a in acc.upper for b in s.upper]
            acc = State.make(L, lows, ups)
        return acc
    raise DomainError(f"unknown bound kind {kind!r}")


def convex_members(L: FiniteLattice, S: State, guard: int = DEFAULT_CARRIER_GUARD) -> list[int]:
    _check_carrier(L, guard)
    if L.kind == "powerset":
        found = set()
        for l in S.lower:
            for u in S.upper:
                if L.leq(l, u):
                    found.update(l | s for s in L.below(u & ~l))
        return sorted(found)
    return [z for z in L.elements() if z in S]


def all_antichains(L: FiniteLattice) -> list[frozenset]:
    """Every antichain of a small lattice (used for exhaustive state scans)."""
    elems = list(L.elements())
    out: list[frozenset] = []

    def grow(start: int, chosen: list[int]):
        out.append(frozenset(chosen))
        for k in range(start, len(elems)):
            e = elems[k]
            if all(not L.leq(c, e) and not L.leq(e, c) for c in chosen):
                chosen.append(e)
                grow(k + 1, chosen)
                chosen.pop()

    grow(0, [])
    return out


def all_states(L: FiniteLattice) -> list[State]:
    chains = all_antichains(L)
    return [State(L, a, b) for a in chains for b in chains]
