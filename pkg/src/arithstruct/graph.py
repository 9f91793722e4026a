"""Undirected loop-free multigraphs, blocks and the wedge construction."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence


class GraphError(ValueError):
    pass


class Multigraph:
    """Immutable undirected multigraph on string-labelled vertices.

    The vertex order given at construction is the order used for every
    vector and matrix indexed by the graph.
    """

    __slots__ = ("_vertices", "_index", "_adj")

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence] = ()):
        verts = tuple(str(v) for v in vertices)
        index: dict[str, int] = {}
        for i, v in enumerate(verts):
            if v in index:
                raise GraphError(f"duplicate vertex label {v!r}")
            index[v] = i
        adj: dict[str, dict[str, int]] = {v: {} for v in verts}
        for edge in edges:
            if len(edge) == 2:
                u, v = edge
                m = 1
            elif len(edge) == 3:
                u, v, m = edge
            else:
                raise GraphError(f"malformed edge {edge!r}")
            u, v, m = str(u), str(v), int(m)
            if u not in index or v not in index:
                raise GraphError(f"edge {edge!r} has an unknown endpoint")
            if u == v:
                raise GraphError(f"loop at vertex {u!r}")
            if m < 0:
                raise GraphError(f"negative multiplicity on {edge!r}")
            if m == 0:
                continue
            adj[u][v] = adj[u].get(v, 0) + m
            adj[v][u] = adj[v].get(u, 0) + m
        self._vertices = verts
        self._index = index
        self._adj = adj

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v) -> bool:
        return v in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self._vertices)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self._vertices == other._vertices and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._vertices, frozenset(self.edges())))

    def __repr__(self) -> str:
        return f"Multigraph({list(self._vertices)!r}, {self.edges()!r})"

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def mult(self, u: str, v: str) -> int:
        return self._adj[u].get(v, 0)

    def neighbors(self, v: str) -> dict[str, int]:
        """Neighbour -> multiplicity, in graph vertex order."""
        nb = self._adj[v]
        return {u: nb[u] for u in self._vertices if u in nb}

    def degree(self, v: str) -> int:
        return sum(self._adj[v].values())

    def degrees(self) -> tuple[int, ...]:
        return tuple(self.degree(v) for v in self._vertices)

    def edges(self) -> list[tuple[str, str, int]]:
        out = []
        for i, u in enumerate(self._vertices):
            for v in self._vertices[i + 1:]:
                m = self._adj[u].get(v, 0)
                if m:
                    out.append((u, v, m))
        return out

    def edge_count(self) -> int:
        """Number of edges counted with multiplicity."""
        return sum(m for _, _, m in self.edges())

    def is_tree(self) -> bool:
        return (
            len(self) >= 1
            and self.is_connected()
            and self.edge_count() == len(self) - 1
        )

    def is_connected(self) -> bool:
        if not self._vertices:
            return True
        return len(self._reach(self._vertices[0], frozenset())) == len(self)

    def _reach(self, start: str, removed: frozenset) -> set[str]:
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in seen and w not in removed:
                    seen.add(w)
                    queue.append(w)
        return seen

    def components(self) -> list[tuple[str, ...]]:
        """Connected components, each in graph order, ordered by first vertex."""
        seen: set[str] = set()
        comps = []
        for v in self._vertices:
            if v in seen:
                continue
            comp = self._reach(v, frozenset())
            seen |= comp
            comps.append(tuple(u for u in self._vertices if u in comp))
        return comps

    def subgraph(self, keep: Iterable[str]) -> Multigraph:
        keep = set(keep)
        for v in keep:
            self.index(v)
        verts = [v for v in self._vertices if v in keep]
        edges = [(u, v, m) for u, v, m in self.edges() if u in keep and v in keep]
        return Multigraph(verts, edges)

    def delete_vertex(self, v: str) -> Multigraph:
        self.index(v)
        return self.subgraph(u for u in self._vertices if u != v)

    def relabel(self, mapping: Mapping[str, str]) -> Multigraph:
        verts = [mapping.get(v, v) for v in self._vertices]
        edges = [(mapping.get(u, u), mapping.get(v, v), m) for u, v, m in self.edges()]
        return Multigraph(verts, edges)

    def to_json(self) -> dict:
        return {"vertices": list(self._vertices), "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, payload: Mapping | str) -> Multigraph:
        if isinstance(payload, str):
            payload = json.loads(payload)
        try:
            return cls(payload["vertices"], payload.get("edges", []))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph payload: {exc}") from None


def build(vertices: Iterable[str], edges: Iterable[Sequence] = ()) -> Multigraph:
    return Multigraph(vertices, edges)


def is_connected(G: Multigraph) -> bool:
    return G.is_connected()


def delete_vertex(G: Multigraph, v: str) -> Multigraph:
    return G.delete_vertex(v)


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[tuple[str, ...], ...]
    cut_vertices: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "blocks": [list(b) for b in self.blocks],
            "cut_vertices": list(self.cut_vertices),
        }


def blocks_and_cut_vertices(G: Multigraph) -> BlockDecomposition:
    """Blocks (maximal 2-connected pieces or bridges) and articulation points.

    Iterative Hopcroft-Tarjan DFS with an edge stack.  Parallel edges are
    collapsed, which does not change the block structure.  An isolated
    vertex (only possible when ``len(G) == 1``) forms its own block.
    """
    if not G.is_connected():
        raise GraphError("block decomposition needs a connected graph")
    verts = G.vertices
    if not verts:
        return BlockDecomposition((), ())
    if len(verts) == 1:
        return BlockDecomposition(((verts[0],),), ())

    order = {v: i for i, v in enumerate(verts)}
    disc: dict[str, int] = {}
    low: dict[str, int] = {}
    cuts: set[str] = set()
    blocks: list[frozenset] = []
    edge_stack: list[tuple[str, str]] = []

    root = verts[0]
    disc[root] = low[root] = 0
    counter = 1
    root_children = 0
    stack = [(root, None, iter(G.neighbors(root)))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if w == parent:
                continue
            if w not in disc:
                disc[w] = low[w] = counter
                counter += 1
                edge_stack.append((v, w))
                stack.append((w, v, iter(G.neighbors(w))))
                advanced = True
                break
            if disc[w] < disc[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent is None:
            continue
        low[parent] = min(low[parent], low[v])
        if low[v] >= disc[parent]:
            if parent == root:
                root_children += 1
            else:
                cuts.add(parent)
            comp = set()
            while True:
                a, b = edge_stack.pop()
                comp.update((a, b))
                if (a, b) == (parent, v):
                    break
            blocks.append(frozenset(comp))
    if root_children > 1:
        cuts.add(root)

    ordered = [tuple(sorted(b, key=order.__getitem__)) for b in blocks]
    ordered.sort(key=lambda b: [order[x] for x in b])
    return BlockDecomposition(
        tuple(ordered), tuple(v for v in verts if v in cuts)
    )


def cut_vertex_components(G: Multigraph, v: str) -> list[tuple[str, ...]]:
    """Components of ``G - v``; raises unless ``v`` is a cut vertex."""
    G.index(v)
    comps = G.delete_vertex(v).components()
    if len(comps) < 2:
        raise GraphError(f"{v!r} is not a cut vertex")
    return comps


@dataclass(frozen=True)
class WedgeMap:
    """Where the vertices of each factor ended up in the wedge."""

    left: dict = field(hash=False)
    right: dict = field(hash=False)
    merged: str


def wedge(
    G1: Multigraph,
    v1: str,
    G2: Multigraph,
    v2: str,
    prefix: str | None = None,
    merged: str | None = None,
) -> tuple[Multigraph, WedgeMap]:
    """Identify ``v1`` of ``G1`` with ``v2`` of ``G2``.

    The merged vertex takes the label ``merged`` (default: ``v1``).  The other
    vertices of ``G2`` keep their labels unless ``prefix`` is given or a
    label collides with ``G1``, in which case all of them are prefixed
    (``"R."`` when no prefix is given).  Vertex order: ``G1`` first, then
    the rest of ``G2``.
    """
    if v1 not in G1:
        raise GraphError(f"anchor {v1!r} not in left graph")
    if v2 not in G2:
        raise GraphError(f"anchor {v2!r} not in right graph")
    merged = v1 if merged is None else merged
    left = {u: (merged if u == v1 else u) for u in G1}
    rest = [u for u in G2 if u != v2]
    taken = set(left.values())
    if prefix is None and any(u in taken for u in rest):
        prefix = "R."
    if prefix:
        right = {u: prefix + u for u in rest}
    else:
        right = {u: u for u in rest}
    right[v2] = merged
    clash = taken & {right[u] for u in rest}
    if clash:
        raise GraphError(f"wedge labels collide: {sorted(clash)}")

    verts = [left[u] for u in G1] + [right[u] for u in rest]
    edges = [(left[a], left[b], m) for a, b, m in G1.edges()]
    edges += [(right[a], right[b], m) for a, b, m in G2.edges()]
    return Multigraph(verts, edges), WedgeMap(left, right, merged)


# Small constructors used throughout tests and demos.

def path_graph(n: int, prefix: str = "p") -> Multigraph:
    verts = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Multigraph(verts, list(zip(verts, verts[1:])))


def cycle_graph(n: int, prefix: str = "c") -> Multigraph:
    verts = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Multigraph(verts, list(zip(verts, verts[1:] + verts[:1])))


def complete_graph(n: int, prefix: str = "k") -> Multigraph:
    verts = [f"{prefix}{i}" for i in range(1, n + 1)]
    return Multigraph(verts, [(a, b) for i, a in enumerate(verts) for b in verts[i + 1:]])


def star_graph(m: int, center: str = "c", prefix: str = "l") -> Multigraph:
    """Star with ``m`` leaves; the center comes first in vertex order."""
    leaves = [f"{prefix}{i}" for i in range(1, m + 1)]
    return Multigraph([center] + leaves, [(center, x) for x in leaves])
