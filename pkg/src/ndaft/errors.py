"""Exception types shared by every module."""

import os


class NdaftError(Exception):
    """Base class for all package errors."""


class DomainError(NdaftError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class CapacityError(NdaftError, RuntimeError):
    """An exhaustive enumeration would exceed its configured guard."""


class IterationError(NdaftError, RuntimeError):
    """A fixpoint iteration failed to stabilise within its bound."""


class ParseError(NdaftError, ValueError):
    """Malformed program, lattice or table text."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


DEFAULT_ATOM_GUARD = 16
DEFAULT_CARRIER_GUARD = 1 << 20


def atom_guard() -> int:
    """Largest atom count for exhaustive pair scans (NDAFT_GUARD_ATOMS overrides)."""
    raw = os.environ.get("NDAFT_GUARD_ATOMS")
    if raw is None or raw == "":
        return DEFAULT_ATOM_GUARD
    try:
        return int(raw)
    except ValueError:
        raise DomainError(f"NDAFT_GUARD_ATOMS must be an integer, got {raw!r}") from None


def check_atom_guard(n: int, what: str = "pair enumeration") -> None:
    limit = atom_guard()
    if n > limit:
        raise CapacityError(f"{what} over {n} atoms exceeds the guard of {limit} atoms")
