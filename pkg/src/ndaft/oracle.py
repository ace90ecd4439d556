"""Independent reference implementations used to cross-check the engine.

The deterministic operator for normal programs evaluates bodies with the
name-based evaluator from :mod:`ndaft.semantics`, never with the compiled
bitset evaluator the engine uses.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from .errors import DomainError
from .fixpoints import complete_bound, fixpoints, kk_state, stable_fixpoints, state_apply, wf_state
from .lattice import Pair, State, ai_leq, pair_leq
from .operators import Ndao, check_properties, ic_min_ndao, ic_ndao, ic_two_valued
from .program import And, Atom, Const, Not, Or, Program, Rule, TRUE
from .semantics import (
    Interpretation,
    eval_formula,
    is_supported,
    is_three_valued_stable,
    is_weakly_supported,
    minimal_two_valued_models,
)
from .four import C, F, T
from .wfsd import ic_complete_fast, wfsd

ATOM_NAMES = ("p", "q", "r", "s", "t", "u", "v")


# ------------------------------------------------------------ deterministic AFT


class DetApproxOp:
    """The deterministic approximator of a normal program; upper is lower swapped."""

    def __init__(self, P: Program):
        if not P.normal:
            bad = next(k for k, r in enumerate(P.rules) if not r.normal)
            raise DomainError(f"deterministic operator needs a normal program; {P.rule_label(bad)} is disjunctive")
        self.program = P
        self.lattice = P.lattice

    def lower(self, x: int, y: int) -> int:
        L = self.lattice
        i = Interpretation.from_pair(L, (x, y))
        out = 0
        for r in self.program.rules:
            if eval_formula(i, r.body) in (T, C):
                out |= L.bit(r.head[0])
        return out

    def upper(self, x: int, y: int) -> int:
        return self.lower(y, x)

    def lfp_lower(self, y: int) -> int:
        x = self.lattice.bot
        while True:
            nxt = self.lower(x, y)
            if nxt == x:
                return x
            x = nxt

    def lfp_upper(self, x: int) -> int:
        y = self.lattice.bot
        while True:
            nxt = self.upper(x, y)
            if nxt == y:
                return y
            y = nxt


def det_ic(P: Program) -> DetApproxOp:
    return DetApproxOp(P)


def det_kk(P: Program) -> Pair:
    op = DetApproxOp(P)
    x, y = op.lattice.bot, op.lattice.top
    while True:
        nx, ny = op.lower(x, y), op.upper(x, y)
        if (nx, ny) == (x, y):
            return Pair(x, y)
        x, y = nx, ny


def det_stable_fixpoints(P: Program, consistent_only: bool = True) -> list[Pair]:
    op = DetApproxOp(P)
    out = []
    for y in op.lattice.elements():
        x = op.lfp_lower(y)
        if op.lfp_upper(x) == y and (not consistent_only or x & ~y == 0):
            out.append(Pair(x, y))
    return sorted(out)


def det_wf(P: Program) -> Pair:
    op = DetApproxOp(P)
    x, y = op.lattice.bot, op.lattice.top
    while True:
        nx, ny = op.lfp_lower(y), op.lfp_upper(x)
        if (nx, ny) == (x, y):
            return Pair(x, y)
        x, y = nx, ny


def det_ultimate(P: Program):
    """The ultimate approximator of a normal program: meet and join of the
    two-valued consequences over the interval [x, y]."""
    op = DetApproxOp(P)
    L = op.lattice

    def consequence(z):
        return op.lower(z, z)

    def bounds(x, y):
        lo, up = L.top, 0
        for z in L.elements():
            if L.leq(x, z) and L.leq(z, y):
                c = consequence(z)
                lo &= c
                up |= c
        return lo, up

    return bounds


# ------------------------------------------------------------ random programs


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    atoms: int = 4
    rules: int = 4
    max_head: int = 2
    max_body: int = 3
    negation_prob: float = 0.3
    disjunctively_normal: bool = True

    def __post_init__(self):
        if not 1 <= self.atoms <= len(ATOM_NAMES):
            raise DomainError(f"atom count must be between 1 and {len(ATOM_NAMES)}")
        if self.rules < 0 or self.max_head < 1 or self.max_body < 0:
            raise DomainError("rule count, head size and body size must be non-negative (head size at least 1)")


def _random_formula(rng: random.Random, names, depth: int, neg_prob: float):
    roll = rng.random()
    if depth == 0 or roll < 0.35:
        if rng.random() < 0.1:
            # only classical constants: U and C would break the swap symmetry of evaluation
            return Const(rng.choice((T, F)))
        a = Atom(rng.choice(names))
        return Not(a) if rng.random() < neg_prob else a
    if roll < 0.5 and neg_prob > 0:
        return Not(_random_formula(rng, names, depth - 1, neg_prob))
    kind = And if roll < 0.75 else Or
    return kind(tuple(_random_formula(rng, names, depth - 1, neg_prob) for _ in range(rng.randint(2, 3))))


def random_program(cfg: GenConfig) -> Program:
    rng = random.Random(cfg.seed)
    names = ATOM_NAMES[: cfg.atoms]
    rules = []
    for _ in range(cfg.rules):
        head = rng.sample(names, rng.randint(1, min(cfg.max_head, len(names))))
        if cfg.disjunctively_normal:
            lits = []
            for _ in range(rng.randint(0, cfg.max_body)):
                a = Atom(rng.choice(names))
                lits.append(Not(a) if rng.random() < cfg.negation_prob else a)
            body = TRUE if not lits else lits[0] if len(lits) == 1 else And(tuple(lits))
        else:
            body = _random_formula(rng, names, 3, cfg.negation_prob)
        rules.append(Rule(tuple(head), body))
    return Program(rules, names)


# ------------------------------------------------------------ state oracle


def naive_state_apply(A: Ndao, S: State) -> State:
    """Apply ``A`` to every member pair of the two closures."""
    L = A.lattice
    lows: set = set()
    ups: set = set()
    for x in S.up.members():
        for y in S.down.members():
            if A.in_domain(x, y):
                lows |= A.apply_lower(x, y)
                ups |= A.apply_upper(x, y)
    return State.make(L, lows, ups)


# ------------------------------------------------------------ theorem suite


@dataclass
class TheoremResult:
    name: str
    status: str
    pairs_checked: int = 0
    counterexample: object = None

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "pairs_checked": self.pairs_checked}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class SuiteReport:
    program: str
    results: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if r.status == "fail"]

    def get(self, name: str) -> TheoremResult:
        return next(r for r in self.results if r.name == name)

    def to_json(self) -> dict:
        return {
            "program": self.program,
            "ok": self.ok,
            "seconds": round(self.seconds, 3),
            "theorems": [r.to_json() for r in self.results],
        }


class _Suite:
    def __init__(self, P: Program, operator: str, only=None):
        self.P = P
        self.L = P.lattice
        self.A = ic_min_ndao(P) if operator == "ic-min" else ic_ndao(P)
        self.operator = operator
        self.only = None if only is None else set(only)
        self.report = SuiteReport(P.text())
        self._memo: dict = {}

    def lazy(self, key, fn):
        if key not in self._memo:
            self._memo[key] = fn()
        return self._memo[key]

    def run(self, name: str, applicable: bool, fn):
        if self.only is not None and name not in self.only:
            return
        if not applicable:
            self.report.results.append(TheoremResult(name, "skip"))
            return
        checked, bad = fn()
        self.report.results.append(TheoremResult(name, "fail" if bad is not None else "pass", checked, bad))

    def pair_json(self, p):
        return Interpretation.from_pair(self.L, p).to_json()

    def state_json(self, S):
        return S.to_json()


def _first(items, check):
    count = 0
    for item in items:
        count += 1
        bad = check(item)
        if bad is not None:
            return count, bad
    return count, None


THEOREMS = (
    "weakly_supported_iff_fixpoint",
    "supported_iff_minimal_fixpoint",
    "stable_model_iff_stable_fixpoint",
    "stable_fixpoints_are_truth_minimal_fixpoints",
    "kk_state_below_every_fixpoint",
    "kk_trace_monotone",
    "wf_state_below_stable_fixpoints",
    "wf_state_below_exact_fixpoints",
    "kk_state_below_wf_state",
    "wf_state_below_wfsd",
    "positive_wf_is_minimal_models",
    "normal_singleton_families",
    "normal_kk_state_is_kk_fixpoint",
    "normal_stable_fixpoints_match",
    "normal_wf_state_is_wf_fixpoint",
    "complete_fast_matches_complete_bound",
    "state_apply_matches_naive_on_traces",
    "ndao_properties",
)


def run_theorem_suite(P: Program, operator: str = "ic", max_atoms: int = 7,
                      include_exact: bool = True, theorems=None) -> SuiteReport:
    """Check the representation and approximation theorems on one program.

    ``theorems`` restricts the run to the named checks; shared results are
    only computed when some selected check needs them.
    """
    if len(P.atoms) > max_atoms:
        raise DomainError(f"theorem suite limited to {max_atoms} atoms, program has {len(P.atoms)}")
    unknown = set(theorems or ()) - set(THEOREMS)
    if unknown:
        raise DomainError(f"unknown theorem names: {sorted(unknown)}")
    start = time.perf_counter()
    s = _Suite(P, operator, theorems)
    A, L = s.A, s.L
    consistent = [Pair(x, y) for x in L.elements() for y in L.above(x)]
    everything = [Pair(x, y) for x in L.elements() for y in L.elements()]
    dn = P.disjunctively_normal

    if operator == "ic-min":
        def mono():
            rep = check_properties(A)
            return rep.comparisons_checked, rep.monotone_witness
        s.run("ndao_properties", len(P.atoms) <= 4, mono)
        s.report.seconds = time.perf_counter() - start
        return s.report

    def fix_all():
        return s.lazy("fix_all", lambda: set(fixpoints(A, consistent_only=False)))

    def fix():
        return s.lazy("fix", lambda: {p for p in fix_all() if L.leq(p.lower, p.upper)})

    def weakly():
        def chk(p):
            a = is_weakly_supported(Interpretation.from_pair(L, p), P)
            if a != (p in fix()):
                return {"pair": s.pair_json(p), "weakly_supported": a, "fixpoint": p in fix()}
        return _first(consistent, chk)

    s.run("weakly_supported_iff_fixpoint", True, weakly)

    def supported():
        def chk(p):
            a = is_supported(Interpretation.from_pair(L, p), P)
            b = p.lower in A.lower_generators(*p) and p.upper in A.upper_minimal(*p)
            if a != b:
                return {"pair": s.pair_json(p), "supported": a, "minimal_fixpoint": b}
        return _first(consistent, chk)

    s.run("supported_iff_minimal_fixpoint", True, supported)

    def stable_all():
        return s.lazy("stable_all", lambda: stable_fixpoints(A, consistent_only=False))

    def stable():
        return s.lazy("stable", lambda: {p for p in stable_all() if L.leq(p.lower, p.upper)})

    def stable_models():
        def chk(p):
            a = is_three_valued_stable(Interpretation.from_pair(L, p), P)
            if a != (p in stable()):
                return {"pair": s.pair_json(p), "stable_model": a, "stable_fixpoint": p in stable()}
        return _first(consistent, chk)

    s.run("stable_model_iff_stable_fixpoint", dn, stable_models)

    def stable_are_fixpoints():
        def chk(p):
            if p not in fix_all():
                return {"pair": s.pair_json(p), "reason": "stable fixpoint is not a fixpoint"}
            for q in fix_all():
                if q != p and pair_leq(L, q, p, "truth"):
                    return {"pair": s.pair_json(p), "smaller_fixpoint": s.pair_json(q)}
        return _first(stable_all(), chk)

    s.run("stable_fixpoints_are_truth_minimal_fixpoints", True, stable_are_fixpoints)

    def kk():
        return s.lazy("kk", lambda: kk_state(A))

    def kk_below():
        def chk(p):
            if not ai_leq(L, kk()[0], State.from_pair(L, *p)):
                return {"fixpoint": s.pair_json(p), "kk_state": s.state_json(kk()[0])}
        count, bad = _first(sorted(fix_all()), chk)
        if bad is None and not kk()[0].has_consistent_pair():
            bad = {"kk_state": s.state_json(kk()[0]), "reason": "no consistent pair"}
        return count, bad

    s.run("kk_state_below_every_fixpoint", True, kk_below)
    s.run("kk_trace_monotone", True, lambda: (len(kk()[1]), None if kk()[1].monotone else kk()[1].to_json()))

    def wf():
        return s.lazy("wf", lambda: wf_state(A))

    def wf_below(pairs):
        def chk(p):
            if not ai_leq(L, wf()[0], State.from_pair(L, *p)):
                return {"pair": s.pair_json(p), "wf_state": s.state_json(wf()[0])}
        return _first(sorted(pairs), chk)

    s.run("wf_state_below_stable_fixpoints", True, lambda: wf_below(stable_all()))
    # Stated for every exact fixpoint x in IC(x) as well; this fails already for
    # {p :- r. r :- r.}, whose fixpoint {p,r} lies outside WF = (0, 0).
    s.run("wf_state_below_exact_fixpoints", include_exact, lambda: wf_below(
        Pair(x, x) for x in L.elements() if x in ic_two_valued(P, x)))
    s.run("kk_state_below_wf_state", True,
          lambda: (1, None if ai_leq(L, kk()[0], wf()[0]) else {"kk": s.state_json(kk()[0]), "wf": s.state_json(wf()[0])}))

    def wf_vs_wfsd():
        d, _ = wfsd(P)
        return 1, None if ai_leq(L, wf()[0], d) else {"wf": s.state_json(wf()[0]), "wfsd": s.state_json(d)}

    s.run("wf_state_below_wfsd", dn, wf_vs_wfsd)

    def positive():
        mins = minimal_two_valued_models(P)
        expect = State.make(L, mins, mins)
        return 1, None if wf()[0] == expect else {"wf": s.state_json(wf()[0]), "minimal_models": s.state_json(expect)}

    s.run("positive_wf_is_minimal_models", P.positive, positive)

    normal = P.normal
    if normal:
        op = det_ic(P)

    def singletons():
        def chk(p):
            lo, up = A.apply(*p)
            if lo != {op.lower(*p)} or up != {op.upper(*p)}:
                return {"pair": s.pair_json(p), "lower": sorted(lo), "upper": sorted(up)}
        return _first(everything, chk)

    s.run("normal_singleton_families", normal, singletons)

    def normal_kk():
        k = det_kk(P)
        return 1, None if kk()[0] == State.from_pair(L, *k) else {"kk_state": s.state_json(kk()[0]), "kk": s.pair_json(k)}

    s.run("normal_kk_state_is_kk_fixpoint", normal, normal_kk)

    def normal_stable():
        d = det_stable_fixpoints(P, consistent_only=False)
        mine = sorted(stable_all())
        return len(mine), None if mine == d else {
            "engine": [s.pair_json(p) for p in mine], "oracle": [s.pair_json(p) for p in d]}

    s.run("normal_stable_fixpoints_match", normal, normal_stable)

    def normal_wf():
        w = det_wf(P)
        return 1, None if wf()[0] == State.from_pair(L, *w) else {"wf_state": s.state_json(wf()[0]), "wf": s.pair_json(w)}

    s.run("normal_wf_state_is_wf_fixpoint", normal, normal_wf)

    def complete():
        def chk(y):
            a, b = ic_complete_fast(P, y), complete_bound(A, "lower", y)
            if a != b:
                return {"y": L.element_json(y), "fast": sorted(a), "complete_bound": sorted(b)}
        return _first(list(L.elements()), chk)

    s.run("complete_fast_matches_complete_bound", dn, complete)

    def shortcut():
        def chk(S):
            a, b = state_apply(A, S), naive_state_apply(A, S)
            if a != b:
                return {"state": s.state_json(S), "shortcut": s.state_json(a), "naive": s.state_json(b)}
        return _first(kk()[1].states + wf()[1].states, chk)

    s.run("state_apply_matches_naive_on_traces", True, shortcut)

    def properties():
        rep = check_properties(A)
        return rep.comparisons_checked, None if rep.all_hold else rep.to_json()

    s.run("ndao_properties", len(P.atoms) <= 4, properties)

    s.report.seconds = time.perf_counter() - start
    return s.report
