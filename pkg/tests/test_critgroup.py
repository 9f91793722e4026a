import random

import networkx as nx
import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form

from arithstruct.critgroup import critical_group, tree_order_formula
from arithstruct.enumeration import EnumerationBudget, brute_force, enumerate_star, enumerate_tree
from arithstruct.graph import GraphError, Multigraph, complete_graph, cycle_graph, path_graph, star_graph
from arithstruct.structures import ArithmeticalStructure, RationalStructure, StructureError, laplacian_structure, reindex

from conftest import star_wedge_tree, from_nx, k3_wedge_k3, random_connected


def spanning_trees(G):
    nxg = nx.MultiGraph()
    nxg.add_nodes_from(G)
    for a, b, m in G.edges():
        for _ in range(m):
            nxg.add_edge(a, b)
    return round(nx.number_of_spanning_trees(nxg))


def sympy_group(G, s):
    """Invariant factors > 1 of L^T via sympy.

    coker(L^T) is Z plus the critical group, so its torsion is the answer.
    """
    n = len(G)
    M = sympy.zeros(n, n)
    for i, u in enumerate(G):
        for j, v in enumerate(G):
            M[i, j] = s.d[i] if i == j else -G.mult(u, v)
    D = smith_normal_form(M.T, domain=sympy.ZZ)
    return sorted(abs(int(D[i, i])) for i in range(n) if abs(int(D[i, i])) > 1)


@pytest.mark.parametrize(
    "G, expected",
    [
        (complete_graph(3), (3,)),
        (complete_graph(4), (4, 4)),
        (cycle_graph(5), (5,)),
        (path_graph(4), ()),
    ],
    ids=["K3", "K4", "C5", "P4"],
)
def test_laplacian_critical_groups(G, expected):
    inv = critical_group(G, laplacian_structure(G))
    assert inv.factors == expected
    assert inv.order == spanning_trees(G)


def test_spanning_tree_count_on_random_multigraphs():
    rng = random.Random(7)
    for _ in range(25):
        G = random_connected(rng, rng.randint(2, 8), "v", extra=rng.randint(0, 5), max_mult=3)
        inv = critical_group(G, laplacian_structure(G))
        assert inv.order == spanning_trees(G)
        assert sorted(inv.factors) == sympy_group(G, laplacian_structure(G))


def test_group_matches_sympy_on_enumerated():
    for G in (k3_wedge_k3(), cycle_graph(4)):
        for s in brute_force(G, EnumerationBudget(r_max=15)):
            assert sorted(critical_group(G, s).factors) == sympy_group(G, s)


def test_factors_divide():
    for s in enumerate_star(4):
        f = critical_group(star_graph(4), s).factors
        assert all(b % a == 0 for a, b in zip(f, f[1:]))
        assert all(a > 1 for a in f)


def test_star_wedge_tree_formula_is_one():
    T = star_wedge_tree()
    s = ArithmeticalStructure((1, 4, 3, 6, 1, 1), (6, 3, 2, 1, 3, 3))
    assert tree_order_formula(T, s) == 1
    assert critical_group(T, s).factors == ()


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_tree_formula_on_all_small_trees(n):
    for T in nx.nonisomorphic_trees(n):
        G = from_nx(T)
        for s in enumerate_tree(G, EnumerationBudget(r_max=25)):
            assert critical_group(G, s).order == tree_order_formula(G, s)


def test_relabel_invariance():
    G = k3_wedge_k3()
    order = ["y2", "z", "x1", "y1", "x2"]
    H = Multigraph(order, G.edges())
    for s in brute_force(G, EnumerationBudget(r_max=12)):
        assert critical_group(H, reindex(s, G, order)) == critical_group(G, s)


def test_critical_group_rejects_rational_and_invalid():
    with pytest.raises(StructureError):
        critical_group(path_graph(2), RationalStructure(("1/2", 2), (2, 1), {"p1"}))
    with pytest.raises(StructureError):
        critical_group(path_graph(2), ArithmeticalStructure((1, 2), (1, 1)))
    with pytest.raises(GraphError):
        tree_order_formula(cycle_graph(3), laplacian_structure(cycle_graph(3)))
