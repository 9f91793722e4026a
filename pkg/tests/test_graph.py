import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from arithstruct.graph import (
    GraphError,
    Multigraph,
    blocks_and_cut_vertices,
    build,
    complete_graph,
    cycle_graph,
    delete_vertex,
    is_connected,
    path_graph,
    star_graph,
    wedge,
)

from conftest import star_wedge_tree, from_nx, k3_wedge_k3, random_connected


def test_build_single_edge():
    G = build(["a", "b"], [("a", "b", 1)])
    assert G.mult("a", "b") == G.mult("b", "a") == 1
    assert G.vertices == ("a", "b")


def test_build_triangle():
    G = build(["1", "2", "3"], [("1", "2", 1), ("2", "3", 1), ("1", "3", 1)])
    assert G.degrees() == (2, 2, 2)
    assert G.edge_count() == 3


@pytest.mark.parametrize(
    "verts, edges",
    [
        (["a", "b"], [("a", "a", 1)]),
        (["a", "a"], []),
        (["a", "b"], [("a", "c")]),
    ],
    ids=["loop", "duplicate-label", "unknown-endpoint"],
)
def test_build_rejects(verts, edges):
    with pytest.raises(GraphError):
        build(verts, edges)


def test_parallel_edges_accumulate():
    G = build(["a", "b"], [("a", "b", 2), ("b", "a")])
    assert G.mult("a", "b") == 3
    assert G.degree("a") == 3


def test_json_roundtrip_and_default_multiplicity():
    G = Multigraph.from_json('{"vertices": ["a","b","c"], "edges": [["a","b"], ["b","c",2]]}')
    assert G.mult("a", "b") == 1 and G.mult("b", "c") == 2
    assert Multigraph.from_json(G.to_json()) == G


def test_connectivity():
    assert is_connected(complete_graph(3))
    assert not is_connected(build(["a", "b"]))
    assert is_connected(cycle_graph(4))


def test_blocks_of_wedge_of_triangles():
    bd = blocks_and_cut_vertices(k3_wedge_k3())
    assert bd.cut_vertices == ("z",)
    assert set(bd.blocks) == {("x1", "x2", "z"), ("z", "y1", "y2")}


def test_blocks_of_tree_are_edges():
    T = star_wedge_tree()
    bd = blocks_and_cut_vertices(T)
    assert len(bd.blocks) == len(T) - 1
    assert set(bd.cut_vertices) == {v for v in T if T.degree(v) > 1}


def test_triangle_is_one_block():
    bd = blocks_and_cut_vertices(complete_graph(3))
    assert bd.blocks == (("k1", "k2", "k3"),) and bd.cut_vertices == ()


def test_blocks_require_connected():
    with pytest.raises(GraphError):
        blocks_and_cut_vertices(build(["a", "b"]))


def test_wedge_of_triangles():
    G, wmap = wedge(complete_graph(3, "x"), "x3", complete_graph(3, "y"), "y1")
    assert len(G) == 5 and wmap.merged == "x3"
    assert blocks_and_cut_vertices(G).cut_vertices == ("x3",)
    # same shape as the reference graph: two triangles on one cut vertex
    assert nx.is_isomorphic(
        nx.Graph([(a, b) for a, b, _ in G.edges()]),
        nx.Graph([(a, b) for a, b, _ in k3_wedge_k3().edges()]),
    )


def test_wedge_of_edges_is_path():
    G, wmap = wedge(path_graph(2), "p2", path_graph(2), "p1")
    # labels collide, so the right side is renamed
    assert wmap.right["p2"] == "R.p2"
    assert G.degrees() == (1, 2, 1)


def test_wedge_of_stars_is_star_wedge_tree():
    S3 = Multigraph(["o", "v", "p", "q"], [("o", "v"), ("o", "p"), ("o", "q")])
    S2 = Multigraph(["c", "a", "b"], [("c", "a"), ("c", "b")])
    G, wmap = wedge(S3, "v", S2, "c")
    assert G == star_wedge_tree()
    assert wmap.right == {"a": "a", "b": "b", "c": "v"}


def test_wedge_missing_anchor():
    with pytest.raises(GraphError):
        wedge(path_graph(2), "zz", path_graph(2), "p1")


def test_delete_vertex():
    assert delete_vertex(complete_graph(3), "k1").edges() == [("k2", "k3", 1)]
    P3 = path_graph(3)
    assert not P3.delete_vertex("p2").is_connected()
    assert P3.delete_vertex("p2").edge_count() == 0
    C4 = cycle_graph(4)
    assert C4.delete_vertex("c1") == path_graph(3, "c").relabel({"c1": "c2", "c2": "c3", "c3": "c4"})
    with pytest.raises(GraphError):
        C4.delete_vertex("nope")


def test_star_helper():
    S = star_graph(3)
    assert S.degrees() == (3, 1, 1, 1)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 11), st.integers(0, 6))
def test_blocks_agree_with_networkx(seed, n, extra):
    G = random_connected(random.Random(seed), n, "v", extra=extra)
    bd = blocks_and_cut_vertices(G)
    nxg = nx.Graph([(a, b) for a, b, _ in G.edges()])
    assert set(bd.cut_vertices) == set(nx.articulation_points(nxg))
    assert {frozenset(b) for b in bd.blocks} == {
        frozenset(c) for c in nx.biconnected_components(nxg)
    }
    # every edge in exactly one block
    for a, b, _ in G.edges():
        assert sum(a in blk and b in blk for blk in bd.blocks) == 1
    for v in G:
        assert G.delete_vertex(v).is_connected() == (v not in bd.cut_vertices)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_wedge_preserves_edges_and_blocks(seed):
    rng = random.Random(seed)
    G1 = from_nx(nx.complete_graph(rng.randint(3, 5)))
    G2 = cycle_graph(rng.randint(3, 6))
    v1, v2 = rng.choice(G1.vertices), rng.choice(G2.vertices)
    H, wmap = wedge(G1, v1, G2, v2)
    assert len(H) == len(G1) + len(G2) - 1
    assert H.edge_count() == G1.edge_count() + G2.edge_count()
    bd = blocks_and_cut_vertices(H)
    assert bd.cut_vertices == (wmap.merged,)
    assert {frozenset(b) for b in bd.blocks} == {
        frozenset(wmap.left.values()),
        frozenset(wmap.right.values()),
    }
