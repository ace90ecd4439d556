import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ndaft.errors import CapacityError, DomainError
from ndaft.fixtures import program, programs
from ndaft.four import VALUES, C, F, T, U
from ndaft.lattice import PowersetLattice
from ndaft.operators import compile_body
from ndaft.program import And, Atom, Const, Not, Or, parse_program
from ndaft.semantics import (
    Interpretation,
    enumerate_interpretations,
    eval_formula,
    gl_reduct,
    is_model,
    is_supported,
    is_three_valued_stable,
    is_weakly_supported,
    minimal_two_valued_models,
    two_valued_models,
)

from _util import interp


def names(P, pred, **kw):
    return sorted(str(i) for i in enumerate_interpretations(P) if pred(i, P, **kw))


def as_str(*pairs):
    return sorted(str(interp(a, b)) for a, b in pairs)


# ---------------------------------------------------------------- evaluation examples


def test_eval_examples():
    assert eval_formula(interp("", "pqr"), Not(Atom("q"))) == U
    assert eval_formula(interp("pqr", ""), Not(Atom("q"))) == C
    assert eval_formula(interp("q", "pq"), Or((Atom("q"), Atom("r")))) == T
    assert eval_formula(interp("", ""), Const(U)) == U


def test_interpretation_json_round_trip():
    i = interp("q", "pq")
    assert i.to_json() == {"lower": ["q"], "upper": ["p", "q"]}
    assert Interpretation.from_json(i.to_json()) == i
    assert str(i) == "({q}, {p,q})"


# ---------------------------------------------------------------- semantic lists


def test_p3_models():
    P = program("P3")
    # derived by the definition; the printed list has ({q,r},{q,r}), which breaks p <- not p,
    # and omits ({p,q},{p,q}) and ({q,r},{p,q,r})
    expected = as_str(
        ("pqr", "pqr"), ("pr", "pr"), ("pq", "pq"), ("r", "pr"), ("q", "pq"),
        ("r", "pqr"), ("q", "pqr"), ("pr", "pqr"), ("pq", "pqr"), ("qr", "pqr"),
    )
    assert names(P, is_model) == expected
    assert not is_model(interp("", "pqr"), P)
    assert not is_model(interp("qr", "qr"), P)


def test_p3_weakly_supported_supported_stable():
    P = program("P3")
    expected = as_str(("q", "pq"), ("r", "pr"))
    # the definition admits three more weakly supported models than the printed list:
    # r in ({q},{p,q,r}) is undecided and supported by the fact q;r
    weakly = expected + as_str(("q", "pqr"), ("r", "pqr"), ("qr", "pqr"))
    assert names(P, is_weakly_supported) == sorted(weakly)
    assert names(P, is_supported) == expected
    assert names(P, is_three_valued_stable) == expected
    assert not is_weakly_supported(interp("pqr", "pqr"), P)


def test_p2_lists():
    P = program("P2")
    weakly = as_str(("", ""), ("", "q"), ("q", "q"), ("", "pq"), ("q", "pq"), ("pq", "pq"))
    assert names(P, is_weakly_supported) == weakly
    assert names(P, is_supported) == as_str(("", ""), ("", "q"), ("q", "q"))
    # the example's later sentence calls ({p,q},{p,q}) not weakly supported; the definition says it is
    assert is_weakly_supported(interp("pq", "pq"), P) and not is_supported(interp("pq", "pq"), P)
    assert not is_supported(interp("q", "pq"), P)
    assert names(P, is_three_valued_stable) == as_str(("", ""))
    assert not is_three_valued_stable(interp("q", "q"), P)


def test_p4_stable_models():
    P = program("P4")
    assert is_three_valued_stable(interp("", "pq"), P)
    assert names(P, is_three_valued_stable) == as_str(("", "pq"), ("p", "p"), ("q", "q"))


def test_empty_program_everything_is_model():
    P = parse_program("", extra_atoms=["p"])
    assert all(is_model(i, P) for i in enumerate_interpretations(P))


def test_inconsistent_interpretations_need_flag():
    P = program("P1")
    with pytest.raises(DomainError):
        is_model(interp("p", ""), P)
    assert is_model(interp("p", ""), P, allow_inconsistent=True) in (True, False)


def test_stable_minimality_scope():
    # ({t},{q,t}) is minimal among consistent pairs, but the inconsistent ({t},{q}) is a smaller model of the reduct
    P = parse_program("q;t;u. q :- not p, not q.")
    i = interp("t", "qt")
    assert is_three_valued_stable(i, P, among="consistent")
    assert not is_three_valued_stable(i, P)
    with pytest.raises(DomainError):
        is_three_valued_stable(i, P, among="some")


# ---------------------------------------------------------------- reducts and two-valued models


def test_reduct_p3():
    R = gl_reduct(program("P3"), interp("q", "pq"))
    assert R.rules == parse_program("p :- #u. q :- #true. r :- #false. q;r.").rules or R.text() == "p :- #u. q. r :- #false. q;r."
    assert R.positive


def test_reduct_p2_identity():
    P = program("P2")
    for i in enumerate_interpretations(P):
        assert gl_reduct(P, i).rules == P.rules


def test_reduct_p6():
    R = gl_reduct(program("P6"), interp("", ""))
    assert R.text() == "p;q. s :- r. r :- s."


def test_reduct_names_offending_rule():
    P = parse_program("p :- q. p :- not (q | r).")
    with pytest.raises(DomainError, match="rule 2"):
        gl_reduct(P, interp("", ""))


def test_two_valued_models_examples():
    P1 = program("P1")
    L = P1.lattice
    assert two_valued_models(P1) == frozenset(L.from_atoms(s) for s in (["p"], ["q"], ["p", "q"]))
    R = parse_program("p;q. q.")
    assert sorted(map(R.lattice.atoms_of, two_valued_models(R))) == [["p", "q"], ["q"]]
    E = parse_program("", extra_atoms=["p"])
    assert two_valued_models(E) == frozenset({0, 1})
    assert minimal_two_valued_models(P1) == frozenset({1, 2})
    with pytest.raises(DomainError):
        two_valued_models(program("P3"))


def test_enumeration_examples():
    P = parse_program("", extra_atoms=["p"])
    assert [str(i) for i in enumerate_interpretations(P)] == ["({}, {})", "({}, {p})", "({p}, {p})"]
    assert len(list(enumerate_interpretations(P, consistent_only=False))) == 4
    assert len(list(enumerate_interpretations(program("P1")))) == 9


def test_enumeration_guard(monkeypatch):
    monkeypatch.setenv("NDAFT_GUARD_ATOMS", "2")
    with pytest.raises(CapacityError):
        list(enumerate_interpretations(program("P3")))


def test_support_chain_on_fixtures():
    for name, P in programs().items():
        for i in enumerate_interpretations(P):
            if is_supported(i, P):
                assert is_weakly_supported(i, P), (name, i)
            if is_weakly_supported(i, P):
                assert is_model(i, P), (name, i)


# ---------------------------------------------------------------- evaluation invariants

ATOMS = ("p", "q", "r")
L3 = PowersetLattice(ATOMS)
ALL_PAIRS = [(x, y) for x in L3.elements() for y in L3.elements()]

formulas = st.recursive(
    st.one_of(st.sampled_from([Atom(a) for a in ATOMS]), st.sampled_from([Const(v) for v in VALUES])),
    lambda inner: st.one_of(
        inner.map(Not),
        st.lists(inner, min_size=2, max_size=3).map(lambda xs: And(tuple(xs))),
        st.lists(inner, min_size=2, max_size=3).map(lambda xs: Or(tuple(xs))),
    ),
    max_leaves=8,
)
classical_formulas = st.recursive(
    st.one_of(st.sampled_from([Atom(a) for a in ATOMS]), st.sampled_from([Const(T), Const(F)])),
    lambda inner: st.one_of(
        inner.map(Not),
        st.lists(inner, min_size=2, max_size=3).map(lambda xs: And(tuple(xs))),
        st.lists(inner, min_size=2, max_size=3).map(lambda xs: Or(tuple(xs))),
    ),
    max_leaves=8,
)


def ev(pair, f):
    return eval_formula(Interpretation.from_pair(L3, pair), f)


@settings(max_examples=150)
@given(classical_formulas)
def test_evaluation_swap_symmetry(f):
    for x, y in ALL_PAIRS:
        a, b = ev((x, y), f), ev((y, x), f)
        assert (a == T) == (b == T)
        assert (a == F) == (b == F)
        assert (a == C) == (b == U)


@settings(max_examples=150)
@given(classical_formulas)
def test_values_switch(f):
    for x, y in ALL_PAIRS:
        if ev((y, x), f) in (T, C):
            assert ev((x, y), f) in (T, U)


@settings(max_examples=150)
@given(classical_formulas)
def test_consistent_pairs_never_glutted(f):
    for x in L3.elements():
        for y in L3.above(x):
            assert ev((x, y), f) != C


@settings(max_examples=100)
@given(formulas)
def test_evaluation_information_monotone(f):
    vals = {p: ev(p, f) for p in ALL_PAIRS}
    for (x1, y1), (x2, y2) in itertools.product(ALL_PAIRS, ALL_PAIRS):
        if L3.leq(x1, x2) and L3.leq(y2, y1):
            assert vals[x1, y1].leq_i(vals[x2, y2])


def _classical(x, f):
    if isinstance(f, Atom):
        return f.name in x
    if isinstance(f, Const):
        return f.value == T
    if isinstance(f, Not):
        return not _classical(x, f.arg)
    if isinstance(f, And):
        return all(_classical(x, g) for g in f.args)
    return any(_classical(x, g) for g in f.args)


@settings(max_examples=150)
@given(classical_formulas)
def test_exact_pairs_are_classical(f):
    for x in L3.elements():
        v = ev((x, x), f)
        assert v in (T, F)
        assert (v == T) == _classical(set(L3.atoms_of(x)), f)


@settings(max_examples=150)
@given(formulas)
def test_compiled_bodies_agree_with_evaluation(f):
    run = compile_body(f, L3)
    for x, y in ALL_PAIRS:
        v = ev((x, y), f)
        assert run(x, y) == (v in (T, C), v in (T, U))


def test_swap_symmetry_needs_classical_constants():
    # U and C constants swap under the exchange of the pair; the lemma is about atoms and T/F only
    assert ev((0, 0), Const(U)) == U and ev((0, 0), Const(U)) != C
