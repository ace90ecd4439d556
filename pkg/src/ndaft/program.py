"""Formula and rule syntax for propositional disjunctive programs, plus the parser.

Grammar (``%`` starts a comment that runs to the end of the line)::

    program  := rule*
    rule     := head (":-" body)? "."
    head     := atom (";" atom)*
    body     := and_expr ("|" and_expr)*
    and_expr := unary ("," unary)*
    unary    := "not" unary | "(" body ")" | atom | "#true" | "#false" | "#u" | "#c"
    atom     := [a-z][A-Za-z0-9_]*
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

from .errors import DomainError, ParseError
from .four import TruthValue
from .lattice import PowersetLattice


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    value: TruthValue

    def __str__(self):
        return _CONST_TEXT[self.value]


@dataclass(frozen=True)
class Not:
    arg: "Formula"

    def __str__(self):
        inner = str(self.arg)
        return f"not {inner}" if isinstance(self.arg, (Atom, Const, Not)) else f"not ({inner})"


@dataclass(frozen=True)
class And:
    args: tuple

    def __str__(self):
        return ", ".join(_wrap(a, Or) for a in self.args) if self.args else "#true"


@dataclass(frozen=True)
class Or:
    args: tuple

    def __str__(self):
        return " | ".join(str(a) for a in self.args) if self.args else "#false"


Formula = Union[Atom, Const, Not, And, Or]

_CONST_TEXT = {
    TruthValue.T: "#true",
    TruthValue.F: "#false",
    TruthValue.U: "#u",
    TruthValue.C: "#c",
}
_TEXT_CONST = {v: k for k, v in _CONST_TEXT.items()}
TRUE = Const(TruthValue.T)


def _wrap(f, kind):
    return f"({f})" if isinstance(f, kind) else str(f)


def atoms_of(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, Const):
        return set()
    if isinstance(f, Not):
        return atoms_of(f.arg)
    out: set[str] = set()
    for a in f.args:
        out |= atoms_of(a)
    return out


def is_literal(f: Formula) -> bool:
    """Atoms, negated atoms and truth constants."""
    return isinstance(f, (Atom, Const)) or (isinstance(f, Not) and isinstance(f.arg, Atom))


def literals(f: Formula) -> tuple | None:
    """The literals of a literal conjunction, or None if f is not one."""
    if is_literal(f):
        return (f,)
    if isinstance(f, And) and all(is_literal(a) for a in f.args):
        return f.args
    return None


def has_negation(f: Formula) -> bool:
    if isinstance(f, Not):
        return True
    if isinstance(f, (And, Or)):
        return any(has_negation(a) for a in f.args)
    return False


@dataclass(frozen=True)
class Rule:
    head: tuple[str, ...]
    body: Formula = TRUE

    def __post_init__(self):
        if not self.head:
            raise DomainError("a rule head must contain at least one atom")
        object.__setattr__(self, "head", tuple(sorted(set(self.head))))

    @property
    def normal(self) -> bool:
        return len(self.head) == 1

    @property
    def disjunctively_normal(self) -> bool:
        return literals(self.body) is not None

    @property
    def positive(self) -> bool:
        return not has_negation(self.body)

    def atoms(self) -> set[str]:
        return set(self.head) | atoms_of(self.body)

    def __str__(self):
        head = ";".join(self.head)
        if self.body == TRUE:
            return head + "."
        return f"{head} :- {self.body}."


class Program:
    """A finite list of rules over an atom universe."""

    def __init__(self, rules: Iterable[Rule], extra_atoms: Iterable[str] = ()):
        self.rules: tuple[Rule, ...] = tuple(rules)
        universe = set(extra_atoms)
        for r in self.rules:
            universe |= r.atoms()
        self.atoms: tuple[str, ...] = tuple(sorted(universe))

    def __repr__(self):
        return f"Program({self.text()!r})"

    def __eq__(self, other):
        return isinstance(other, Program) and (self.rules, self.atoms) == (other.rules, other.atoms)

    def __hash__(self):
        return hash((self.rules, self.atoms))

    def __len__(self):
        return len(self.rules)

    @cached_property
    def lattice(self) -> PowersetLattice:
        return PowersetLattice(self.atoms)

    @property
    def normal(self) -> bool:
        return all(r.normal for r in self.rules)

    @property
    def disjunctively_normal(self) -> bool:
        return all(r.disjunctively_normal for r in self.rules)

    @property
    def positive(self) -> bool:
        return all(r.positive for r in self.rules)

    def text(self) -> str:
        return " ".join(str(r) for r in self.rules)

    def with_universe(self, atoms: Iterable[str]) -> "Program":
        return Program(self.rules, set(atoms) | set(self.atoms))

    def rule_label(self, k: int) -> str:
        return f"rule {k + 1} ({self.rules[k]})"


# ---------------------------------------------------------------- parser

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*)
  | (?P<arrow>:-)
  | (?P<const>\#true|\#false|\#u|\#c)
  | (?P<ident>[a-z][A-Za-z0-9_]*)
  | (?P<punct>[;|,.()])
    """,
    re.VERBOSE,
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = list(self._lex())
        self.pos = 0

    def _where(self, offset: int):
        line = self.text.count("\n", 0, offset) + 1
        col = offset - (self.text.rfind("\n", 0, offset) + 1) + 1
        return line, col

    def _lex(self):
        i = 0
        n = len(self.text)
        while i < n:
            m = _TOKEN.match(self.text, i)
            if not m:
                line, col = self._where(i)
                raise ParseError(f"unexpected character {self.text[i]!r}", line, col)
            kind = m.lastgroup
            if kind != "ws":
                value = m.group(kind)
                if kind == "ident" and value == "not":
                    kind = "not"
                elif kind == "punct" or kind == "arrow":
                    kind = value
                yield kind, value, i
            i = m.end()
        yield "eof", "", n

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind: str):
        tok = self.tokens[self.pos]
        if tok[0] != kind:
            self.fail(f"expected {kind!r}")
        self.pos += 1
        return tok

    def fail(self, msg: str):
        kind, value, off = self.tokens[self.pos]
        line, col = self._where(off)
        found = "end of input" if kind == "eof" else repr(value)
        raise ParseError(f"{msg}, found {found}", line, col)

    def program(self) -> list[Rule]:
        rules = []
        while self.peek()[0] != "eof":
            rules.append(self.rule())
        return rules

    def rule(self) -> Rule:
        if self.peek()[0] != "ident":
            self.fail("expected a head atom")
        head = [self.take("ident")[1]]
        while self.peek()[0] == ";":
            self.pos += 1
            if self.peek()[0] != "ident":
                self.fail("expected an atom after ';'")
            head.append(self.take("ident")[1])
        body: Formula = TRUE
        if self.peek()[0] == ":-":
            self.pos += 1
            body = self.body()
        self.take(".")
        return Rule(tuple(head), body)

    def body(self) -> Formula:
        parts = [self.conj()]
        while self.peek()[0] == "|":
            self.pos += 1
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conj(self) -> Formula:
        parts = [self.unary()]
        while self.peek()[0] == ",":
            self.pos += 1
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> Formula:
        kind, value, _ = self.peek()
        if kind == "not":
            self.pos += 1
            return Not(self.unary())
        if kind == "(":
            self.pos += 1
            inner = self.body()
            self.take(")")
            return inner
        if kind == "ident":
            self.pos += 1
            return Atom(value)
        if kind == "const":
            self.pos += 1
            return Const(_TEXT_CONST[value])
        self.fail("expected a literal, constant or '('")


def parse_program(text: str, extra_atoms: Iterable[str] = ()) -> Program:
    return Program(_Parser(text).program(), extra_atoms)


def load_program(path) -> Program:
    with open(path, encoding="utf-8") as fh:
        return parse_program(fh.read())
