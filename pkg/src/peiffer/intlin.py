"""Small exact integer linear algebra: Smith normal form and lattice tests.

Matrices are lists of rows of Python ints.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def matvec(A: Matrix, x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def transpose(A: Matrix, ncols: int | None = None) -> Matrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def hstack(A: Matrix, B: Matrix) -> Matrix:
    return [list(a) + list(b) for a, b in zip(A, B)]


def smith_normal_form(A: Matrix, ncols: int | None = None):
    """Return ``(S, U, V)`` with ``U A V = S`` diagonal, ``U, V`` unimodular.

    The diagonal entries are nonnegative and each divides the next.
    ``ncols`` is needed only when ``A`` has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    S = [list(map(int, row)) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col dst += q * col src
        for row in S:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        entries = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            piv = S[t][t]
            dirty = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // piv))
                    dirty = dirty or S[i][t] != 0
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // piv))
                    dirty = dirty or S[t][j] != 0
            if dirty:
                cand = [(abs(S[i][t]), i, t) for i in range(t + 1, m) if S[i][t]]
                cand += [(abs(S[t][j]), t, j) for j in range(t + 1, n) if S[t][j]]
                _, i, j = min(cand)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
    return S, U, V


def invariant_factors(A: Matrix, ncols: int | None = None) -> list[int]:
    """Nonzero diagonal of the Smith form."""
    S, _, _ = smith_normal_form(A, ncols)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0)) if S[i][i]]


def rank(A: Matrix, ncols: int | None = None) -> int:
    return len(invariant_factors(A, ncols))


def kernel_basis(A: Matrix, ncols: int | None = None) -> list[list[int]]:
    """A basis of ``{x in Z^n : A x = 0}`` (a saturated sublattice)."""
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    S, _, V = smith_normal_form(A, n)
    r = sum(1 for i in range(min(m, n)) if S[i][i])
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def solve(A: Matrix, b: Sequence[int], ncols: int | None = None) -> list[int] | None:
    """An integer ``x`` with ``A x = b``, or ``None``."""
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    S, U, V = smith_normal_form(A, n)
    c = matvec(U, b)
    y = [0] * n
    for i in range(m):
        s = S[i][i] if i < n else 0
        if s == 0:
            if c[i] != 0:
                return None
        elif c[i] % s:
            return None
        else:
            y[i] = c[i] // s
    return matvec(V, y)


def columns(A: Matrix, ncols: int | None = None) -> list[list[int]]:
    n = len(A[0]) if A else (ncols or 0)
    return [[row[j] for row in A] for j in range(n)]


def from_columns(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    return [[c[i] for c in cols] for i in range(nrows)]


def lattice_contains(gens: Sequence[Sequence[int]], vectors: Sequence[Sequence[int]], dim: int) -> bool:
    """Every vector lies in the integer span of ``gens`` (all in ``Z^dim``)."""
    M = from_columns(gens, dim)
    return all(solve(M, v, len(gens)) is not None for v in vectors)
