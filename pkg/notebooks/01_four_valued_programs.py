"""Evaluating a disjunctive program in four-valued logic.

Interpretations are pairs (lower, upper) of atom sets: an atom is true when
it is in both, false when in neither, undecided when only in the upper set.
"""

from ndaft.fixtures import program
from ndaft.semantics import (
    enumerate_interpretations,
    gl_reduct,
    is_model,
    is_supported,
    is_three_valued_stable,
    is_weakly_supported,
    Interpretation,
)

P = program("P3")
print("program:")
print(P.text())

for label, pred in [
    ("models", is_model),
    ("weakly supported", is_weakly_supported),
    ("supported", is_supported),
    ("three-valued stable", is_three_valued_stable),
]:
    hits = [str(i) for i in enumerate_interpretations(P) if pred(i, P)]
    print(f"{label} ({len(hits)}): {', '.join(hits)}")

# The reduct replaces negated atoms by their value in the interpretation.
i = Interpretation.of(["q"], ["p", "q"])
print(f"\nreduct at {i}:")
print(gl_reduct(P, i).text())
