"""Extending rational structures to integral ones on a larger graph.

Every relaxed vertex with a non-integral ``d`` gets a pendant star or path
whose contribution at that vertex tops ``d`` up to the next integer.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import ceil, floor, lcm
from typing import Sequence

from .graph import Multigraph
from .gluing import Piece, _merge
from .linalg import to_rational
from .structures import (
    ArithmeticalStructure,
    RationalStructure,
    Structure,
    StructureError,
    verify_structure,
)


def _unit_interval(q) -> Fraction:
    q = to_rational(q)
    if not 0 < q <= 1:
        raise ValueError(f"{q} is not in (0, 1]")
    return q


def sylvester_greedy(q) -> list[int]:
    """Greedy Egyptian fraction: always take the largest unit fraction that fits."""
    rem = _unit_interval(q)
    out = []
    while rem:
        a = ceil(1 / rem)
        out.append(a)
        rem -= Fraction(1, a)
    return out


def repeat_denominator(q) -> list[int]:
    """``p/s`` in lowest terms as ``p`` copies of ``1/s``."""
    q = _unit_interval(q)
    return [q.denominator] * q.numerator


def hirzebruch_jung(x) -> list[int]:
    """Digits of the negative continued fraction ``x = e1 - 1/(e2 - 1/(...))``.

    Every digit is at least 2.
    """
    x = to_rational(x)
    if x <= 1:
        raise ValueError(f"{x} is not greater than 1")
    digits = []
    while True:
        e = ceil(x)
        digits.append(e)
        if e == x:
            return digits
        x = 1 / (e - x)


def hirzebruch_jung_value(digits: Sequence[int]) -> Fraction:
    x = Fraction(digits[-1])
    for e in reversed(digits[:-1]):
        x = e - 1 / x
    return x


def _fresh(G: Multigraph, base: str) -> str:
    name = base
    while name in G:
        name += "'"
    return name


def _star_piece(u: str, q: Fraction, leaves: list[int], G: Multigraph) -> Piece:
    names = []
    for i in range(len(leaves)):
        names.append(_fresh(G, f"{u}.s{i + 1}"))
    star = Multigraph([u] + names, [(u, x) for x in names])
    c = reduce(lcm, leaves, 1)
    d = (q,) + tuple(Fraction(a) for a in leaves)
    r = (c,) + tuple(c // a for a in leaves)
    return Piece(star, u, RationalStructure(d, r, frozenset({u})))


def _path_piece(u: str, q: Fraction, G: Multigraph) -> Piece:
    digits = hirzebruch_jung(1 / q)
    k = len(digits)
    names = [_fresh(G, f"{u}.p{i + 1}") for i in range(k)]
    path = Multigraph([u] + names, list(zip([u] + names, names)))
    # r from the far end inward: e_i r_i = r_{i-1} + r_{i+1}.
    r = [0] * (k + 2)
    r[k] = 1
    for i in range(k, 0, -1):
        r[i - 1] = digits[i - 1] * r[i] - r[i + 1]
    d = (q,) + tuple(Fraction(e) for e in digits)
    return Piece(path, u, RationalStructure(d, tuple(r[: k + 1]), frozenset({u})))


def _deficits(G: Multigraph, s: Structure) -> list[tuple[str, Fraction]]:
    report = verify_structure(G, s)
    if not report:
        raise StructureError(f"invalid structure: {', '.join(report.failures)}")
    out = []
    for i, u in enumerate(G):
        du = Fraction(s.d[i])
        if u in s.relaxed and du.denominator != 1:
            out.append((u, 1 - (du - floor(du))))
    return out


def _attach(G: Multigraph, s: Structure, make_piece) -> tuple[Multigraph, Structure]:
    H, cur = G, s
    for u, q in _deficits(G, s):
        H, cur, _ = _merge(Piece(H, u, cur), make_piece(u, q, H), prefix="", merged=u)
    if isinstance(cur, RationalStructure):
        cur = cur.to_arithmetical()
    return H, cur


_EXPANSIONS = {"greedy": sylvester_greedy, "repeat": repeat_denominator}


def extend_star(G: Multigraph, s: Structure, strategy: str = "greedy") -> tuple[Multigraph, ArithmeticalStructure]:
    """Integral extension by pendant stars.

    At a relaxed vertex ``u`` with ``d_u`` not an integer, the deficit
    ``q = 1 - frac(d_u)`` is written as a sum of unit fractions ``1/a_i``
    (``strategy`` picks the expansion) and a leaf with ``d = a_i`` is
    attached for each term, raising ``d_u`` to ``floor(d_u) + 1``.  Relaxed
    vertices whose ``d`` is already integral are left alone.  New leaves
    are named ``"{u}.s1"``, ``"{u}.s2"``, ...
    """
    try:
        expand = _EXPANSIONS[strategy]
    except KeyError:
        raise ValueError(f"unknown strategy {strategy!r}") from None
    return _attach(G, s, lambda u, q, H: _star_piece(u, q, expand(q), H))


def extend_path(G: Multigraph, s: Structure) -> tuple[Multigraph, ArithmeticalStructure]:
    """Integral extension by pendant paths.

    The path at ``u`` carries the digits of ``1/q`` as a negative continued
    fraction, nearest vertex first, so that its contribution at ``u`` is
    exactly ``q``.  Path vertices are named ``"{u}.p1"`` (adjacent to
    ``u``), ``"{u}.p2"``, ...
    """
    return _attach(G, s, lambda u, q, H: _path_piece(u, q, H))
