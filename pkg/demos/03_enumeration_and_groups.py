# Enumerating structures and computing their critical groups.
# Run: python3 demos/03_enumeration_and_groups.py

# %%
from collections import Counter
from math import comb

from arithstruct import (
    EnumerationBudget,
    critical_group,
    cycle_graph,
    enumerate_star,
    enumerate_structures,
    laplacian_structure,
    path_graph,
    star_graph,
    tree_order_formula,
)
from arithstruct.graph import complete_graph

# %% paths: Catalan numbers
for n in range(2, 8):
    res = enumerate_structures(path_graph(n), EnumerationBudget(r_max=200))
    print(f"P{n}: {res.count} structures (Catalan {comb(2 * (n - 1), n - 1) // n})")

# %% cycles: binomial(2n-1, n-1)
for n in range(3, 6):
    res = enumerate_structures(cycle_graph(n), EnumerationBudget(r_max=100))
    print(f"C{n}: {res.count} structures, expected {comb(2 * n - 1, n - 1)}")

# %% stars need no budget
for m in range(1, 6):
    print(f"S{m}: {len(enumerate_star(m))} structures")

# %% critical groups of the ordinary Laplacian
for name, G in [("K3", complete_graph(3)), ("K4", complete_graph(4)), ("C5", cycle_graph(5))]:
    print(name, critical_group(G, laplacian_structure(G)).to_json())

# %% on a star the group order follows r alone
S3 = star_graph(3)
orders = Counter()
for s in enumerate_star(3):
    inv = critical_group(S3, s)
    assert inv.order == tree_order_formula(S3, s)
    orders[inv.factors] += 1
for factors, k in sorted(orders.items()):
    print(factors or "trivial", k)
