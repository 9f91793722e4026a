# Turning a rational structure into an integral one on a bigger graph.
# Run: python3 demos/02_extensions.py

# %%
from fractions import Fraction

from arithstruct import (
    RationalStructure,
    cycle_graph,
    extend_path,
    extend_star,
    hirzebruch_jung,
    repeat_denominator,
    sylvester_greedy,
    verify_structure,
)
from arithstruct.structures import as_mapping

# %% expansions of the deficit q = 1 - frac(d)
for q in (Fraction(2, 3), Fraction(4, 5), Fraction(5, 7)):
    print(q, "greedy", sylvester_greedy(q), "repeat", repeat_denominator(q), "path digits", hirzebruch_jung(1 / q))

# %% a 4-cycle with rational d at c1 and c3
C4 = cycle_graph(4)
s = RationalStructure((Fraction(1, 3), 6, Fraction(5, 3), 9), (15, 3, 3, 2), {"c1", "c3"})
print(verify_structure(C4, s))

for label, (H, t) in {
    "greedy stars": extend_star(C4, s, "greedy"),
    "repeat stars": extend_star(C4, s, "repeat"),
    "paths": extend_path(C4, s),
}.items():
    print(f"\n{label}: {len(H)} vertices, valid={verify_structure(H, t).valid}")
    for v, (dv, rv) in as_mapping(H, t).items():
        print(f"  {v:7s} d={dv} r={rv}")
