"""Exact integer/rational linear algebra.

Rationals are :class:`fractions.Fraction`; matrices are lists of rows.
Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Mapping, Sequence, Union

from .graph import GraphError, Multigraph

Rational = Fraction
Matrix = list  # list[list[Fraction | int]]
RationalLike = Union[int, Fraction, str]


def to_rational(x: RationalLike) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x: RationalLike) -> str:
    x = to_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def assignment_vector(G: Multigraph, x) -> list[Fraction]:
    """Turn a vertex->value mapping or an ordered sequence into a vector."""
    if isinstance(x, Mapping):
        missing = [v for v in G if v not in x]
        if missing:
            raise GraphError(f"assignment missing vertices {missing}")
        return [to_rational(x[v]) for v in G]
    vals = list(x)
    if len(vals) != len(G):
        raise GraphError(f"assignment has {len(vals)} entries, graph has {len(G)} vertices")
    return [to_rational(a) for a in vals]


def laplacian(G: Multigraph, x) -> Matrix:
    """Generalized Laplacian: ``x`` on the diagonal, ``-m_uv`` elsewhere."""
    diag = assignment_vector(G, x)
    verts = G.vertices
    M = []
    for i, u in enumerate(verts):
        row = [Fraction(-G.mult(u, v)) for v in verts]
        row[i] = diag[i]
        M.append(row)
    return M


def integer_laplacian(G: Multigraph, d: Sequence[int]) -> list[list[int]]:
    """``L(G, d)`` for an integer ``d`` given in graph order, as plain ints."""
    verts = G.vertices
    M = []
    for i, u in enumerate(verts):
        row = [-G.mult(u, v) for v in verts]
        row[i] = int(d[i])
        M.append(row)
    return M


def matvec(M: Sequence[Sequence], x: Sequence) -> list:
    return [sum((a * b for a, b in zip(row, x)), 0) for row in M]


def _bareiss_int(A: list[list[int]]) -> int:
    n = len(A)
    if n == 0:
        return 1
    A = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = A[k][k]
        for i in range(k + 1, n):
            aik = A[i][k]
            row_i, row_k = A[i], A[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return sign * A[n - 1][n - 1]


def det(M: Sequence[Sequence]) -> Fraction:
    """Exact determinant.

    Each column is scaled by the lcm of its denominators, the resulting
    integer matrix goes through fraction-free Bareiss elimination, and the
    scale is divided back out.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    cols = [[to_rational(M[i][j]) for i in range(n)] for j in range(n)]
    scale = 1
    int_cols = []
    for col in cols:
        c = reduce(lcm, (a.denominator for a in col), 1)
        scale *= c
        int_cols.append([a.numerator * (c // a.denominator) for a in col])
    A = [[int_cols[j][i] for j in range(n)] for i in range(n)]
    return Fraction(_bareiss_int(A), scale)


def rref(M: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals and its pivot columns."""
    A = [[to_rational(a) for a in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [a * inv for a in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M: Sequence[Sequence]) -> int:
    return len(rref(M)[1])


def primitive(v: Sequence[RationalLike]) -> list[int]:
    """Scale a nonzero rational vector to an integer vector with gcd 1.

    The sign of the first nonzero entry is kept.
    """
    vals = [to_rational(a) for a in v]
    den = reduce(lcm, (a.denominator for a in vals), 1)
    ints = [a.numerator * (den // a.denominator) for a in vals]
    g = reduce(gcd, ints, 0)
    if g == 0:
        raise ValueError("zero vector has no primitive form")
    return [a // g for a in ints]


def kernel_vector(M: Sequence[Sequence]) -> tuple[int, ...] | None:
    """Positive primitive generator of the right kernel of a square matrix.

    Returns None when the kernel is not one-dimensional or is not spanned by
    a strictly positive vector.
    """
    n = len(M)
    if n == 0:
        return None
    R, pivots = rref(M)
    if len(pivots) != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivots)
    x = [Fraction(0)] * n
    x[free] = Fraction(1)
    for i, p in enumerate(pivots):
        x[p] = -R[i][free]
    v = primitive(x)
    if all(a < 0 for a in v):
        v = [-a for a in v]
    if not all(a > 0 for a in v):
        return None
    return tuple(v)


def identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(c) for c in zip(*A)]


def smith_normal_form(A: Sequence[Sequence[int]], transforms: bool = False):
    """Invariant factors of an integer matrix.

    Returns the list ``[d_1, ..., d_k]`` with ``k = min(rows, cols)``,
    ``d_i | d_{i+1}`` and zeros last.  With ``transforms=True`` returns
    ``(factors, U, V)`` where ``U`` and ``V`` are unimodular and ``U A V`` is
    the diagonal matrix of the factors.

    Pivots are chosen by minimal absolute value; plain elementary
    operations, no modular tricks.
    """
    S = [[int(a) for a in row] for row in A]
    m = len(S)
    n = len(S[0]) if m else 0
    U = identity(m) if transforms else None
    V = identity(n) if transforms else None

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        S[dst] = [a + f * b for a, b in zip(S[dst], S[src])]
        if U is not None:
            U[dst] = [a + f * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, f):  # col_dst += f * col_src
        for row in S:
            row[dst] += f * row[src]
        if V is not None:
            for row in V:
                row[dst] += f * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    a = S[i][j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // p))
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // p))
                    dirty = dirty or S[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            if U is not None:
                U[t] = [-a for a in U[t]]

    factors = [S[i][i] for i in range(min(m, n))]
    if transforms:
        return factors, U, V
    return factors


def unimodular_completion(r: Sequence[int]) -> tuple[list[list[int]], list[list[int]]]:
    """Unimodular ``W`` with ``r W = e_1`` (as a row vector), and ``W^-1``.

    Column operations of the extended Euclidean algorithm, i.e. a Hermite
    reduction of the single row ``r``.  Requires ``gcd(r) = 1``.
    """
    r = [int(a) for a in r]
    n = len(r)
    if n == 0 or reduce(gcd, r, 0) != 1:
        raise ValueError("unimodular completion needs a vector with gcd 1")
    row = list(r)
    W = identity(n)
    Winv = identity(n)

    # col_dst += f * col_src on W; the inverse gets row_src -= f * row_dst.
    def add_col(dst, src, f):
        row[dst] += f * row[src]
        for w in W:
            w[dst] += f * w[src]
        Winv[src] = [a - f * b for a, b in zip(Winv[src], Winv[dst])]

    def swap(i, j):
        row[i], row[j] = row[j], row[i]
        for w in W:
            w[i], w[j] = w[j], w[i]
        Winv[i], Winv[j] = Winv[j], Winv[i]

    def negate(i):
        row[i] = -row[i]
        for w in W:
            w[i] = -w[i]
        Winv[i] = [-a for a in Winv[i]]

    while True:
        nz = [j for j in range(n) if row[j]]
        piv = min(nz, key=lambda j: abs(row[j]))
        others = [j for j in nz if j != piv]
        if not others:
            break
        for j in others:
            add_col(j, piv, -(row[j] // row[piv]))
    if piv != 0:
        swap(0, piv)
    if row[0] < 0:
        negate(0)
    assert row[0] == 1 and not any(row[1:])
    return W, Winv


def integer_kernel_basis(r: Sequence[int]) -> list[list[int]]:
    """Basis (as rows) of the lattice ``{z in Z^n : z . r = 0}``."""
    W, _ = unimodular_completion(r)
    n = len(r)
    return [[W[i][j] for i in range(n)] for j in range(1, n)]
