"""Cut-vertex glue and split of structures, and the wedge determinant identity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Mapping, NamedTuple, Sequence

from .graph import GraphError, Multigraph, cut_vertex_components, wedge
from .linalg import det, laplacian, to_rational
from .structures import (
    ArithmeticalStructure,
    RationalStructure,
    Structure,
    StructureError,
    verify_structure,
)


class Piece(NamedTuple):
    """A graph, the vertex it is glued at, and a structure on it."""

    graph: Multigraph
    anchor: str
    structure: Structure


def _merge(left: Piece, right: Piece, prefix=None, merged=None):
    G1, v1, s1 = left
    G2, v2, s2 = right
    H, wmap = wedge(G1, v1, G2, v2, prefix=prefix, merged=merged)
    i1, i2 = G1.index(v1), G2.index(v2)
    l = lcm(s1.r[i1], s2.r[i2])
    f1, f2 = l // s1.r[i1], l // s2.r[i2]

    d: dict[str, Fraction] = {}
    r: dict[str, int] = {}
    for i, u in enumerate(G1):
        d[wmap.left[u]] = Fraction(s1.d[i])
        r[wmap.left[u]] = f1 * s1.r[i]
    for i, u in enumerate(G2):
        if u == v2:
            d[wmap.merged] += Fraction(s2.d[i])
        else:
            d[wmap.right[u]] = Fraction(s2.d[i])
            r[wmap.right[u]] = f2 * s2.r[i]

    dv = tuple(d[v] for v in H)
    rv = tuple(r[v] for v in H)
    # gcd(l/a, l/b) = 1 for l = lcm(a, b), so primitivity is inherited.
    assert reduce(gcd, rv, 0) == 1, "glue produced a non-primitive r"

    relaxed = {wmap.left[u] for u in s1.relaxed if u != v1}
    relaxed |= {wmap.right[u] for u in s2.relaxed if u != v2}
    if d[wmap.merged].denominator != 1:
        relaxed.add(wmap.merged)
    if not relaxed and all(a.denominator == 1 for a in dv):
        return H, ArithmeticalStructure(tuple(a.numerator for a in dv), rv), wmap
    return H, RationalStructure(dv, rv, frozenset(relaxed)), wmap


def glue(
    left: Piece, right: Piece, prefix: str | None = None, merged: str | None = None
) -> tuple[Multigraph, Structure]:
    """Glue two anchored structures into one on the wedge graph.

    ``d`` values at the anchors add up; everything else is copied.  The
    ``r`` vectors are rescaled so that they agree at the merged vertex,
    using ``lcm`` of the two anchor values.  The result is an
    :class:`ArithmeticalStructure` exactly when the merged ``d`` is an
    integer, otherwise a :class:`RationalStructure` relaxed at the merged
    vertex.
    """
    for side, (G, v, s) in (("left", left), ("right", right)):
        if v not in G:
            raise GraphError(f"{side} anchor {v!r} not in graph")
        if not set(s.relaxed) <= {v}:
            raise StructureError(f"{side} structure is relaxed away from its anchor")
        report = verify_structure(G, s)
        if not report:
            raise StructureError(f"{side} structure invalid: {', '.join(report.failures)}")
    H, s, _ = _merge(Piece(*left), Piece(*right), prefix=prefix, merged=merged)
    return H, s


def glue_all(pieces: Sequence[Piece]) -> tuple[Multigraph, Structure]:
    """Left fold of :func:`glue` over pieces sharing one anchor label."""
    if not pieces:
        raise ValueError("nothing to glue")
    G, v, s = pieces[0]
    for piece in pieces[1:]:
        G, s = glue(Piece(G, v, s), piece, merged=v)
    return G, s


def split(G: Multigraph, v: str, s: Structure) -> list[Piece]:
    """Break a structure at a cut vertex into one rational piece per side.

    For each component ``C`` of ``G - v`` the piece lives on ``G[C + v]``;
    its ``d`` at ``v`` is the share ``sum(m_uv r_u for u in C) / r_v`` and
    its ``r`` is the restriction of ``r``, made primitive.  The shares sum
    to ``d_v``, so :func:`glue_all` undoes the split.
    """
    comps = cut_vertex_components(G, v)
    if not set(s.relaxed) <= {v}:
        raise StructureError("structure is relaxed away from the split vertex")
    report = verify_structure(G, s)
    if not report:
        raise StructureError(f"invalid structure: {', '.join(report.failures)}")

    iv = G.index(v)
    rv = s.r[iv]
    pieces = []
    for comp in comps:
        keep = set(comp) | {v}
        sub = G.subgraph(keep)
        share = Fraction(sum(G.mult(u, v) * s.r[G.index(u)] for u in comp), rv)
        d = []
        r = []
        for u in sub:
            i = G.index(u)
            d.append(share if u == v else Fraction(s.d[i]))
            r.append(s.r[i])
        g = reduce(gcd, r, 0)
        pieces.append(
            Piece(sub, v, RationalStructure(tuple(d), tuple(a // g for a in r), frozenset({v})))
        )
    return pieces


@dataclass(frozen=True)
class DetIdentity:
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


def wedge_factors(G: Multigraph, v: str) -> tuple[Multigraph, Multigraph]:
    """``G1 = G[C1 + v]`` and ``G2`` = everything else plus ``v``."""
    comps = cut_vertex_components(G, v)
    first = set(comps[0])
    G1 = G.subgraph(first | {v})
    G2 = G.subgraph(u for u in G if u not in first)
    return G1, G2


def det_identity(
    G: Multigraph, v: str, x: Mapping[str, object], t1, t2
) -> DetIdentity:
    """Both sides of the determinant factorization at a cut vertex.

    ``lhs = det L(G, x)`` with ``x_v = t1 + t2``;
    ``rhs = det L(G1 - v) det L(G2; t2 at v) + det L(G2 - v) det L(G1; t1 at v)``.
    """
    G1, G2 = wedge_factors(G, v)
    t1, t2 = to_rational(t1), to_rational(t2)
    vals = {u: to_rational(x[u]) for u in G if u != v}

    def det_on(H: Multigraph, tv=None) -> Fraction:
        assign = {u: (tv if u == v else vals[u]) for u in H}
        return det(laplacian(H, assign))

    lhs = det_on(G, t1 + t2)
    rhs = det_on(G1.delete_vertex(v)) * det_on(G2, t2) + det_on(G2.delete_vertex(v)) * det_on(G1, t1)
    return DetIdentity(lhs, rhs)
