"""The bundled example corpus: eleven small programs and three table operators."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .lattice import ExplicitLattice, parse_lattice
from .operators import TableNdao, parse_table
from .program import Program, parse_program


def data_text(name: str) -> str:
    return resources.files("ndaft").joinpath("data", name).read_text(encoding="utf-8")


def data_path(name: str):
    return resources.files("ndaft").joinpath("data", name)


@lru_cache(maxsize=None)
def program_texts() -> dict[str, str]:
    out: dict[str, str] = {}
    name = None
    for line in data_text("programs.lp").splitlines():
        if line.startswith("%%"):
            name = line[2:].strip()
            out[name] = ""
        elif name is not None:
            out[name] += line + "\n"
    return out


def program(name: str) -> Program:
    return parse_program(program_texts()[name])


def programs() -> dict[str, Program]:
    return {name: program(name) for name in program_texts()}


def lattice(name: str) -> ExplicitLattice:
    return parse_lattice(data_text(name + ".lattice"))


def table(lattice_name: str, table_name: str) -> TableNdao:
    return parse_table(data_text(table_name + ".table"), lattice(lattice_name))


def six_node_ndao() -> TableNdao:
    return table("six_node", "six_node")


def four_ndao() -> TableNdao:
    return table("four", "four")


def no_consistent_fixpoint_ndao() -> TableNdao:
    return table("two_atoms", "no_consistent_fixpoint")
