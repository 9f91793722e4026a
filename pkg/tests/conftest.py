import random

import networkx as nx
import pytest

from arithstruct.graph import Multigraph, complete_graph, path_graph, star_graph, wedge


def k3_wedge_k3():
    """Two triangles sharing ``z``; order (x1, x2, z, y1, y2)."""
    return Multigraph(
        ["x1", "x2", "z", "y1", "y2"],
        [("x1", "x2"), ("x1", "z"), ("x2", "z"), ("z", "y1"), ("z", "y2"), ("y1", "y2")],
    )


def star_wedge_tree():
    """Root ``o`` with children ``v`` (which has leaves ``a``, ``b``), ``p``, ``q``.

    Order (o, v, p, q, a, b) matches d = (1, 4, 3, 6, 1, 1).
    """
    return Multigraph(
        ["o", "v", "p", "q", "a", "b"],
        [("o", "v"), ("o", "p"), ("o", "q"), ("v", "a"), ("v", "b")],
    )


def from_nx(T: nx.Graph) -> Multigraph:
    return Multigraph([f"t{v}" for v in sorted(T.nodes)], [(f"t{a}", f"t{b}") for a, b in T.edges])


def random_connected(rng: random.Random, n: int, prefix: str, extra: int = 2, max_mult: int = 2) -> Multigraph:
    """Random spanning tree plus a few extra (possibly parallel) edges."""
    verts = [f"{prefix}{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        edges.append((verts[i], verts[rng.randrange(i)], rng.randint(1, max_mult)))
    for _ in range(extra):
        a, b = rng.sample(verts, 2) if n > 1 else (verts[0], verts[0])
        if a != b:
            edges.append((a, b, 1))
    return Multigraph(verts, edges)


def random_cut_graph(rng: random.Random, n_total: int) -> tuple[Multigraph, str]:
    """Wedge of two random connected graphs, ``n_total`` vertices overall."""
    n1 = rng.randint(2, n_total - 1)
    n2 = n_total + 1 - n1
    G1 = random_connected(rng, n1, "a")
    G2 = random_connected(rng, n2, "b")
    H, wmap = wedge(G1, rng.choice(G1.vertices), G2, rng.choice(G2.vertices))
    return H, wmap.merged


CORPUS = {
    **{f"P{n}": path_graph(n) for n in range(3, 7)},
    **{f"S{m}": star_graph(m) for m in range(1, 5)},
    "K3vK3": k3_wedge_k3(),
    "star_wedge": star_wedge_tree(),
}


@pytest.fixture
def k3k3():
    return k3_wedge_k3()


@pytest.fixture
def star_wedge():
    return star_wedge_tree()


@pytest.fixture
def K3():
    return complete_graph(3)


@pytest.fixture
def P2():
    return path_graph(2)
