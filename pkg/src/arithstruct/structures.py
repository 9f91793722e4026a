"""Arithmetical and rational arithmetical structures and their verification."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Sequence

from .graph import GraphError, Multigraph
from .linalg import format_rational, kernel_vector, laplacian, to_rational


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class ArithmeticalStructure:
    """Positive integer ``d`` and ``r`` with ``L(G, d) r = 0`` and ``gcd(r) = 1``.

    Both vectors follow the vertex order of the graph they live on.
    """

    d: tuple[int, ...]
    r: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(_as_int(a) for a in self.d))
        object.__setattr__(self, "r", tuple(int(a) for a in self.r))

    @property
    def relaxed(self) -> frozenset:
        return frozenset()

    def to_json(self, G: Multigraph | None = None) -> dict:
        return {"d": [str(a) for a in self.d], "r": list(self.r), "relaxed": []}


@dataclass(frozen=True)
class RationalStructure:
    """Structure whose ``d`` may be a positive rational on the ``relaxed`` set."""

    d: tuple[Fraction, ...]
    r: tuple[int, ...]
    relaxed: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(to_rational(a) for a in self.d))
        object.__setattr__(self, "r", tuple(int(a) for a in self.r))
        object.__setattr__(self, "relaxed", frozenset(self.relaxed))

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.d)

    def to_arithmetical(self) -> ArithmeticalStructure:
        if not self.is_integral():
            raise StructureError("d is not integral")
        return ArithmeticalStructure(tuple(a.numerator for a in self.d), self.r)

    def to_json(self, G: Multigraph | None = None) -> dict:
        if G is not None:
            relaxed = [v for v in G if v in self.relaxed]
        else:
            relaxed = sorted(self.relaxed)
        return {
            "d": [format_rational(a) for a in self.d],
            "r": list(self.r),
            "relaxed": relaxed,
        }


Structure = ArithmeticalStructure | RationalStructure


def _as_int(a) -> int:
    if isinstance(a, Fraction):
        if a.denominator != 1:
            raise StructureError(f"{a} is not an integer")
        return a.numerator
    if isinstance(a, str):
        return _as_int(Fraction(a))
    return int(a)


def structure_from_json(payload: Mapping | str) -> Structure:
    """Load ``{"d": [...], "r": [...], "relaxed": [...]}``.

    Returns an :class:`ArithmeticalStructure` when nothing is relaxed and
    every ``d`` entry is an integer.
    """
    if isinstance(payload, str):
        payload = json.loads(payload)
    try:
        d = [to_rational(a) for a in payload["d"]]
        r = [int(a) for a in payload["r"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"malformed structure payload: {exc}") from None
    relaxed = frozenset(payload.get("relaxed") or ())
    if not relaxed and all(a.denominator == 1 for a in d):
        return ArithmeticalStructure(tuple(a.numerator for a in d), r)
    return RationalStructure(tuple(d), r, relaxed)


def reindex(s: Structure, src: Multigraph, order: Sequence[str]) -> Structure:
    """Same structure with entries listed in ``order`` instead of ``src`` order."""
    idx = [src.index(v) for v in order]
    if sorted(idx) != list(range(len(src))):
        raise GraphError("reindex order is not a permutation of the graph vertices")
    d = tuple(s.d[i] for i in idx)
    r = tuple(s.r[i] for i in idx)
    if isinstance(s, ArithmeticalStructure):
        return ArithmeticalStructure(d, r)
    return RationalStructure(d, r, s.relaxed)


def as_mapping(G: Multigraph, s: Structure) -> dict[str, tuple[Fraction, int]]:
    """Vertex label -> (d_v, r_v); convenient for order-free comparisons."""
    return {v: (Fraction(s.d[i]), s.r[i]) for i, v in enumerate(G)}


@dataclass(frozen=True)
class Report:
    """Outcome of a verification: names of the failed conditions."""

    failures: tuple[str, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        return {"valid": self.valid, "failures": list(self.failures)}


def _check(G: Multigraph, relaxed: Iterable[str], d, r) -> Report:
    n = len(G)
    if len(d) != n or len(r) != n:
        raise GraphError(f"structure has {len(d)}/{len(r)} entries, graph has {n} vertices")
    relaxed = set(relaxed)
    unknown = relaxed - set(G.vertices)
    if unknown:
        raise GraphError(f"relaxed vertices {sorted(unknown)} not in graph")
    d = [to_rational(a) for a in d]
    r = [to_rational(a) for a in r]
    failures = []
    if not all(a > 0 for a in d) or not all(a > 0 for a in r):
        failures.append("positivity")
    integral_r = all(a.denominator == 1 for a in r)
    integral_d = all(a.denominator == 1 for v, a in zip(G, d) if v not in relaxed)
    if not (integral_r and integral_d):
        failures.append("integrality")
    # (L r)_v = d_v r_v - sum(m_uv r_u); ints where possible, exact either way
    dd = [a.numerator if a.denominator == 1 else a for a in d]
    rr = [a.numerator if a.denominator == 1 else a for a in r]
    pos = {v: i for i, v in enumerate(G)}
    for i, v in enumerate(G):
        if dd[i] * rr[i] != sum(m * rr[pos[u]] for u, m in G.neighbors(v).items()):
            failures.append("kernel")
            break
    if integral_r and reduce(gcd, (a.numerator for a in r), 0) != 1:
        failures.append("gcd")
    return Report(tuple(failures))


def verify(G: Multigraph, d, r) -> Report:
    """Check positivity, integrality, ``L(G,d) r = 0`` and ``gcd(r) = 1``."""
    return _check(G, (), d, r)


def verify_rational(G: Multigraph, relaxed: Iterable[str], d, r) -> Report:
    """As :func:`verify`, with integrality of ``d`` waived on ``relaxed``."""
    return _check(G, relaxed, d, r)


def verify_structure(G: Multigraph, s: Structure) -> Report:
    return _check(G, s.relaxed, s.d, s.r)


def r_from_d(G: Multigraph, d) -> tuple[int, ...] | None:
    return kernel_vector(laplacian(G, d))


def d_from_r(G: Multigraph, r: Sequence[int]) -> tuple[int, ...] | None:
    """The unique ``d`` making ``(d, r)`` a structure, if it is integral."""
    if len(r) != len(G):
        raise GraphError("r does not match the graph")
    r = [int(a) for a in r]
    if any(a <= 0 for a in r):
        return None
    pos = {v: i for i, v in enumerate(G)}
    d = []
    for i, v in enumerate(G):
        total = sum(m * r[pos[u]] for u, m in G.neighbors(v).items())
        q, rem = divmod(total, r[i])
        if rem or q <= 0:
            return None
        d.append(q)
    return tuple(d)


def laplacian_structure(G: Multigraph) -> ArithmeticalStructure:
    """The ordinary Laplacian: degrees with the all-ones vector."""
    return ArithmeticalStructure(G.degrees(), (1,) * len(G))
