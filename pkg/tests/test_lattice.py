import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ndaft.errors import CapacityError, DomainError, ParseError
from ndaft.fixtures import lattice as bundled_lattice
from ndaft.lattice import (
    ExplicitLattice,
    Pair,
    State,
    ai_leq,
    all_antichains,
    all_states,
    closure,
    convex_members,
    extremal_elements,
    family_leq,
    hoare_leq,
    pair_leq,
    parse_lattice,
    si_leq,
    smyth_leq,
    state_bound,
)

from _util import el, fam, member_names, powerset, state

L2 = powerset("pq")
L3 = powerset("pqr")
L4 = powerset("pqrs")


# ---------------------------------------------------------------- basic order


def test_powerset_leq_examples():
    assert L2.leq(el(L2, "p"), el(L2, "p", "q"))
    assert not L2.leq(el(L2, "p"), el(L2, "q"))


def test_six_node_leq():
    six = bundled_lattice("six_node")
    assert six.leq(six.parse_element("x'"), six.parse_element("x"))
    assert not six.leq(six.parse_element("x"), six.parse_element("y"))
    assert six.meet(six.parse_element("x"), six.parse_element("y")) == six.bot


def test_bound_examples():
    assert L3.bound(el(L3, "p", "q"), el(L3, "q", "r"), "meet") == el(L3, "q")
    assert L3.bound(el(L3, "p"), el(L3, "q"), "join") == el(L3, "p", "q")
    assert L3.bound(L3.bot, el(L3, "r"), "meet") == L3.bot
    with pytest.raises(DomainError):
        L3.bound(0, 1, "sideways")


def test_foreign_element_rejected():
    with pytest.raises(DomainError):
        L2.check(4)


def test_pair_leq_examples():
    assert pair_leq(L3, (0, el(L3, "p", "q")), (el(L3, "p"), el(L3, "p")), "information")
    assert pair_leq(L3, (el(L3, "p"), el(L3, "p")), (el(L3, "p", "q"), el(L3, "p", "q")), "truth")
    assert pair_leq(L3, (0, L3.top), (0, el(L3, "p", "q")), "information")


def test_family_orders_examples():
    La = powerset("ab")
    ab = fam(La, "a", "b")
    a = fam(La, "a")
    assert family_leq(La, ab, a, "smyth")
    assert not family_leq(La, ab, a, "hoare")
    assert family_leq(La, ab, ab, "smyth")
    assert family_leq(L3, fam(L3, ""), fam(L3, "pq", "r"), "smyth")
    # literal quantifiers on empty families
    assert smyth_leq(L3, fam(L3, "p"), frozenset())
    assert hoare_leq(L3, frozenset(), fam(L3, "p"))


def test_ai_leq_examples():
    least = (fam(L3, ""), fam(L3, "pqr"))
    assert ai_leq(L3, least, (fam(L3, "p"), fam(L3, "q")))
    S = (fam(L3, "p", "q"), fam(L3, "pq"))
    assert ai_leq(L3, S, S)


def test_si_leq_examples():
    P = [(0, 3), (1, 1)]
    assert si_leq(L2, P, P)
    assert si_leq(L2, [(L2.bot, L2.top)], [(1, 2), (3, 3)])


def test_closure_examples():
    c = closure(L2, fam(L2, "p", "q", "pq"), "up")
    assert c.antichain == fam(L2, "p", "q")
    assert closure(L2, [], "up").antichain == frozenset()
    d = closure(L4, fam(L4, "psr", "qsr", "pqsr"), "down")
    assert d.antichain == fam(L4, "pqrs")
    assert el(L4, "p") in closure(L4, fam(L4, "pr"), "down")
    with pytest.raises(DomainError):
        closure(L2, [], "sideways")


def test_extremal_examples():
    assert extremal_elements(L3, fam(L3, "q", "qr"), "minimal") == fam(L3, "q")
    anti = fam(L3, "p", "qr")
    assert extremal_elements(L3, anti, "minimal") == anti
    assert extremal_elements(L3, fam(L3, "", "p", "q"), "maximal") == fam(L3, "p", "q")
    assert extremal_elements(L3, [], "minimal") == frozenset()


def test_state_bound_examples():
    a = state(L2, ["p"], ["p"])
    b = state(L2, ["q"], ["q"])
    assert state_bound([a], "glb") == a
    assert state_bound([a, b], "glb") == state(L2, ["p", "q"], ["p", "q"])
    assert state_bound([State.least_precise(L2), a], "lub") == a
    with pytest.raises(DomainError):
        state_bound([], "glb")


def test_convex_members_examples():
    S = state(L2, ["p", "q"], ["pq"])
    assert member_names(S) == ["p", "pq", "q"]
    S7 = state(L4, ["p", "q"], ["pr", "ps", "qr", "qs"])
    assert member_names(S7) == ["p", "pr", "ps", "q", "qr", "qs"]
    assert state(L2, ["pq"], [""]).members() == []
    with pytest.raises(CapacityError):
        convex_members(L4, S7, guard=8)


def test_state_json_round_trip():
    S = state(L3, ["p", "q"], ["pq", "r"])
    doc = S.to_json(with_members=True)
    assert doc["lower_antichain"] == [["p"], ["q"]]
    assert doc["upper_antichain"] == [["p", "q"], ["r"]]
    assert State.from_json(L3, doc) == S


# ---------------------------------------------------------------- explicit lattices


def test_parse_lattice_closes_order():
    L = parse_lattice("node a b c\nleq a b\nleq b c\n")
    assert L.leq(L.parse_element("a"), L.parse_element("c"))
    assert L.bot == L.parse_element("a") and L.top == L.parse_element("c")


@pytest.mark.parametrize(
    "text",
    [
        "node a b\nleq a b\nleq b a\n",  # cycle
        "node a b c\nleq a b\nleq a c\n",  # no top
        "node a b\nleq a z\n",  # unknown node
        "node a\nwhat a\n",  # unknown keyword
    ],
)
def test_parse_lattice_rejects(text):
    with pytest.raises((ParseError, DomainError)):
        parse_lattice(text)


def test_explicit_lattice_laws():
    for name in ("six_node", "four", "two_atoms"):
        L = bundled_lattice(name)
        els = list(L.elements())
        for a, b in itertools.product(els, els):
            m, j = L.meet(a, b), L.join(a, b)
            assert L.leq(m, a) and L.leq(m, b) and L.leq(a, j) and L.leq(b, j)
            assert all(L.leq(c, m) for c in els if L.leq(c, a) and L.leq(c, b))
            assert all(L.leq(j, c) for c in els if L.leq(a, c) and L.leq(b, c))
        assert all(L.leq(L.bot, a) and L.leq(a, L.top) for a in els)


def test_explicit_lattice_without_meets_rejected():
    # two incomparable elements with two incomparable common upper bounds
    text = "node bot a b c d top\nleq bot a\nleq bot b\nleq a c\nleq b c\nleq a d\nleq b d\nleq c top\nleq d top\n"
    with pytest.raises((ParseError, DomainError)):
        parse_lattice(text)


# ---------------------------------------------------------------- invariants

families3 = st.frozensets(st.integers(0, 7), max_size=5)


@given(families3, families3, families3)
def test_family_orders_are_preorders(X, Y, Z):
    for order in ("smyth", "hoare"):
        assert family_leq(L3, X, X, order)
        if family_leq(L3, X, Y, order) and family_leq(L3, Y, Z, order):
            assert family_leq(L3, X, Z, order)


@given(families3, families3)
def test_family_equivalent_to_closure(X, Y):
    up = closure(L3, X, "up").antichain
    down = closure(L3, X, "down").antichain
    assert family_leq(L3, up, X, "smyth") and family_leq(L3, X, up, "smyth")
    assert family_leq(L3, down, X, "hoare") and family_leq(L3, X, down, "hoare")
    # orders only see closures
    assert family_leq(L3, X, Y, "smyth") == family_leq(L3, up, Y, "smyth")
    assert family_leq(L3, Y, X, "hoare") == family_leq(L3, Y, down, "hoare")


def _products(X, Y):
    return [Pair(x, y) for x in X for y in Y]


def test_ai_leq_matches_si_leq_exhaustively_on_two_atoms():
    # the product reading needs non-empty families; ndao outputs always are
    families = [frozenset(c) for r in range(1, 5) for c in itertools.combinations(range(4), r)]
    for X1, Y1, X2, Y2 in itertools.product(families, repeat=4):
        assert ai_leq(L2, (X1, Y1), (X2, Y2)) == si_leq(L2, _products(X1, Y1), _products(X2, Y2))


nonempty3 = st.frozensets(st.integers(0, 7), min_size=1, max_size=5)


@settings(max_examples=1000)
@given(nonempty3, nonempty3, nonempty3, nonempty3)
def test_ai_leq_matches_si_leq_on_three_atoms(X1, Y1, X2, Y2):
    assert ai_leq(L3, (X1, Y1), (X2, Y2)) == si_leq(L3, _products(X1, Y1), _products(X2, Y2))


STATES2 = all_states(L2)


def test_state_count_two_atoms():
    assert len(all_antichains(L2)) == 6
    assert len(STATES2) == 36


def test_glb_lub_are_bounds_in_precision_order():
    for a, b in itertools.product(STATES2, STATES2):
        g = state_bound([a, b], "glb")
        assert ai_leq(L2, g, a) and ai_leq(L2, g, b)
        for c in STATES2:
            if ai_leq(L2, c, a) and ai_leq(L2, c, b):
                assert ai_leq(L2, c, g)
        j = state_bound([a, b], "lub")
        assert ai_leq(L2, a, j) and ai_leq(L2, b, j)
        for c in STATES2:
            if ai_leq(L2, a, c) and ai_leq(L2, b, c):
                assert ai_leq(L2, j, c)


def test_members_determine_tight_states():
    tight = [s for s in STATES2 if s.is_tight() and s.lower and s.upper]
    for a, b in itertools.product(tight, tight):
        assert (set(a.members()) == set(b.members())) == (a == b)


def test_non_tight_states_can_share_members():
    # documented limit of the member reading: loose generators are invisible in the convex set
    a = state(L2, ["p"], ["p"])
    b = state(L2, ["p", "q"], ["p"])
    assert a.members() == b.members() and a != b


def test_ai_leq_is_superset_on_tight_states():
    tight = [s for s in STATES2 if s.is_tight() and s.lower and s.upper]
    for a, b in itertools.product(tight, tight):
        assert ai_leq(L2, a, b) == set(b.members()).issubset(a.members())


@given(st.sampled_from(all_states(L3)))
def test_state_contains_agrees_with_members(S):
    members = set(S.members())
    assert all((z in S) == (z in members) for z in L3.elements())


def test_explicit_state_members():
    six = bundled_lattice("six_node")
    S = State.make(six, [six.parse_element("x'")], [six.parse_element("x")])
    assert sorted(six.name(m) for m in S.members()) == ["x", "x'"]
