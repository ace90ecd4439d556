"""Kripke-Kleene and well-founded states.

A state is a convex set of atom sets, stored as an up-set (lower antichain)
and a down-set (upper antichain).  Both states are reached by iterating
from the least precise state.
"""

from ndaft.fixtures import program
from ndaft.fixpoints import kk_state, precision_compare, wf_state
from ndaft.operators import ic_ndao
from ndaft.wfsd import wfsd


def describe(S):
    L = S.lattice
    return f"up {L.format_family(S.lower)}  down {L.format_family(S.upper)}  members {L.format_family(S.members())}"


for name in ("P1", "P5", "P6", "P7", "P8"):
    P = program(name)
    A = ic_ndao(P)
    K, trace = kk_state(A)
    W, _ = wf_state(A)
    print(f"{name}: {P.text().strip()}")
    print(f"  KK after {len(trace) - 1} steps: {describe(K)}")
    print(f"  WF: {describe(W)}")

# The disjunctive well-founded semantics is at least as precise as the WF state.
P8 = program("P8")
W8, _ = wf_state(ic_ndao(P8))
D8, _ = wfsd(P8)
print("\nP8 WF vs disjunctive WFS:", precision_compare(W8, D8))
print("  disjunctive WFS:", describe(D8))
