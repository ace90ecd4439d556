"""Non-deterministic operators and their fixpoints.

The immediate-consequence ndao returns, for a pair, families of candidate
lower and upper bounds.  Fixpoints, stable fixpoints and Kripke-Kleene
interpretations are read off pair by pair.
"""

from ndaft.fixtures import program
from ndaft.fixpoints import complete_bound, fixpoints, kk_interpretations, stable_fixpoints
from ndaft.operators import check_properties, ic_min_ndao, ic_ndao


def show(P, pairs):
    return ", ".join(P.lattice.format_pair(p) for p in pairs) or "none"


for name in ("P1", "P4", "P5"):
    P = program(name)
    A = ic_ndao(P)
    print(f"{name}: {P.text().strip()}")
    print("  fixpoints:         ", show(P, fixpoints(A)))
    print("  kk interpretations:", show(P, kk_interpretations(A)))
    print("  stable fixpoints:  ", show(P, stable_fixpoints(A)))

P5 = program("P5")
A5 = ic_ndao(P5)
L = P5.lattice
print("\nP5 complete lower bounds:")
for y in (L.bot, L.from_atoms(["p"]), L.from_atoms(["p", "q"]), L.top):
    print(f"  at {L.format_family([y])[1:-1]}: {L.format_family(complete_bound(A5, 'lower', y))}")

# Taking only minimal hitting sets breaks monotonicity.
rep = check_properties(ic_min_ndao(program("P9")))
print("\nminimal-hitting-set operator on P9 monotone?", rep.ai_monotone)
print("witness:", rep.monotone_witness)
