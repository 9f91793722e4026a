"""Critical groups ``ker(r^T) / Im L(G, d)^T`` of arithmetical structures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .graph import GraphError, Multigraph
from .linalg import integer_laplacian, matmul, smith_normal_form, unimodular_completion
from .structures import Structure, StructureError, verify_structure


class ConsistencyError(RuntimeError):
    """An identity that must hold by theory failed on concrete data."""


@dataclass(frozen=True)
class GroupInvariants:
    """Invariant factors ``f_1 | f_2 | ...``, all at least 2; empty means trivial."""

    factors: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return prod(self.factors)

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.factors), "order": str(self.order)}


def group_order(inv: GroupInvariants) -> int:
    return inv.order


def critical_group(G: Multigraph, s: Structure) -> GroupInvariants:
    """Invariant factors of the critical group of ``(d, r)`` on ``G``.

    The rows of ``L(G, d)`` lie in the lattice ``ker(r^T)``; they are
    rewritten in coordinates of an explicit lattice basis (taken from a
    unimodular completion ``W`` of ``r``, so the coordinates are the last
    ``n - 1`` entries of ``W^{-1} row``) and the coordinate matrix goes
    through Smith normal form.
    """
    if s.relaxed:
        raise StructureError("critical group needs an integral structure")
    report = verify_structure(G, s)
    if not report:
        raise StructureError(f"invalid structure: {', '.join(report.failures)}")
    n = len(G)
    if n == 1:
        return GroupInvariants()
    L = integer_laplacian(G, s.d)
    _, Winv = unimodular_completion(s.r)
    # coords[:, i] = W^{-1} L[i]; row 0 is r . L[i] = 0.
    coords = matmul(Winv, [list(col) for col in zip(*L)])
    if any(coords[0]):
        raise ConsistencyError("a Laplacian row left ker(r^T)")
    factors = smith_normal_form(coords[1:])
    if 0 in factors:
        raise ConsistencyError("critical group came out infinite")
    return GroupInvariants(tuple(f for f in factors if f != 1))


def tree_order_formula(T: Multigraph, s: Structure) -> int:
    """``prod(r_v ** (deg_v - 2))`` for a structure on a tree."""
    if not T.is_tree():
        raise GraphError("tree order formula needs a tree")
    report = verify_structure(T, s)
    if not report or s.relaxed:
        raise StructureError("tree order formula needs a valid integral structure")
    value = Fraction(1)
    for v, rv in zip(T, s.r):
        value *= Fraction(rv) ** (T.degree(v) - 2)
    if value.denominator != 1 or value <= 0:
        raise ConsistencyError(f"tree order formula gave non-integer {value}")
    return value.numerator
