import pytest

from ndaft.errors import ParseError
from ndaft.four import C, U
from ndaft.program import TRUE, And, Atom, Const, Not, Or, Rule, load_program, parse_program
from ndaft.fixtures import program, program_texts


def test_fact_has_true_body():
    P = parse_program("p;q.")
    (r,) = P.rules
    assert r.head == ("p", "q") and r.body == TRUE
    assert P.atoms == ("p", "q")


def test_negated_body():
    (r,) = parse_program("q :- not r.").rules
    assert r.head == ("q",) and r.body == Not(Atom("r"))


def test_nested_body():
    (r,) = parse_program("p :- q, not (r | s).").rules
    assert r.body == And((Atom("q"), Not(Or((Atom("r"), Atom("s"))))))
    assert not r.disjunctively_normal


def test_constants_and_comments():
    P = parse_program("% comment\np :- #u, #c. % trailing\nq :- #true | #false.\n")
    assert P.rules[0].body == And((Const(U), Const(C)))
    assert P.atoms == ("p", "q")


def test_duplicate_head_atoms_are_merged():
    (r,) = parse_program("p;p;q.").rules
    assert r.head == ("p", "q")


def test_extra_atoms_extend_universe():
    assert parse_program("p.", extra_atoms=["z"]).atoms == ("p", "z")


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("p :- .", 1, 6),
        (":- q.", 1, 1),
        ("p\nq.", 2, 1),
        ("p :- q", 1, 7),
        ("P.", 1, 1),
        ("p :- not.", 1, 9),
        ("p :- (q.", 1, 8),
    ],
)
def test_parse_errors_have_positions(text, line, column):
    with pytest.raises(ParseError) as info:
        parse_program(text)
    assert info.value.line == line and info.value.column == column


def test_class_flags():
    assert program("P4").normal
    assert not program("P1").normal and program("P1").disjunctively_normal
    assert program("P1").positive and not program("P3").positive
    assert parse_program("p :- not not q.").rules[0].disjunctively_normal is False


def test_text_round_trip():
    for name, text in program_texts().items():
        P = program(name)
        assert parse_program(P.text()).rules == P.rules, name


def test_load_program(tmp_path):
    f = tmp_path / "x.lp"
    f.write_text("a;b. a :- c.\n")
    P = load_program(f)
    assert P.atoms == ("a", "b", "c") and len(P.rules) == 2


def test_rule_label_names_rule():
    P = program("P3")
    assert "p :- not p" in P.rule_label(0)


def test_rule_head_must_be_nonempty():
    with pytest.raises(ValueError):
        Rule((), TRUE)
