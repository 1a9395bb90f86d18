"""Exact integer matrix arithmetic.

Matrices are numpy arrays with ``dtype=object`` holding Python integers, so
entries never overflow. Everything here is fraction-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Optional, Sequence

import numpy as np

IntegerMatrix = np.ndarray


def as_integer_matrix(rows: Sequence[Sequence[int]] | np.ndarray, cols: Optional[int] = None) -> IntegerMatrix:
    """Copy ``rows`` into a 2-d object array of Python ints.

    ``cols`` is only needed to shape an empty matrix (zero rows).
    """
    data = [[int(x) for x in row] for row in rows]
    if not data:
        return np.zeros((0, cols or 0), dtype=object)
    width = len(data[0])
    if any(len(row) != width for row in data):
        raise ValueError("ragged integer matrix")
    out = np.empty((len(data), width), dtype=object)
    for i, row in enumerate(data):
        out[i, :] = row
    return out


def identity(k: int) -> IntegerMatrix:
    return np.eye(k, dtype=int).astype(object)


def _content(row: List[int]) -> int:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    return g


def rank(A: IntegerMatrix) -> int:
    """Rank over the rationals, by fraction-free elimination.

    Each eliminated row is divided by the gcd of its entries so that entry
    growth stays bounded by the pivots actually used.
    """
    M = [[int(x) for x in row] for row in np.asarray(A, dtype=object)]
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for col in range(ncols):
        if r == len(M):
            break
        candidates = [i for i in range(r, len(M)) if M[i][col] != 0]
        if not candidates:
            continue
        p = min(candidates, key=lambda i: abs(M[i][col]))
        M[r], M[p] = M[p], M[r]
        pivot_row = M[r]
        a = pivot_row[col]
        for i in range(r + 1, len(M)):
            b = M[i][col]
            if b == 0:
                continue
            row = [a * x - b * y for x, y in zip(M[i], pivot_row)]
            g = _content(row)
            M[i] = [x // g for x in row] if g > 1 else row
        r += 1
    return r


SparseColumn = Dict[int, int]


def sparse_rank(columns: Sequence[SparseColumn]) -> int:
    """Rank over the rationals of a matrix given by sparse columns ``{row: value}``.

    Column reduction on the lowest nonzero row: a column whose lowest row is
    already a pivot is combined with the pivot column until it vanishes or
    exposes a new lowest row.
    """
    pivots: Dict[int, SparseColumn] = {}
    for col in columns:
        c = {r: v for r, v in col.items() if v}
        while c:
            low = max(c)
            p = pivots.get(low)
            if p is None:
                pivots[low] = c
                break
            a, b = p[low], c[low]
            merged: SparseColumn = {r: a * v for r, v in c.items()}
            for r, v in p.items():
                x = merged.get(r, 0) - b * v
                if x:
                    merged[r] = x
                else:
                    merged.pop(r, None)
            g = _content(list(merged.values()))
            c = {r: v // g for r, v in merged.items()} if g > 1 else merged
    return len(pivots)


def determinant(A: IntegerMatrix) -> int:
    """Determinant of a square integer matrix (Bareiss)."""
    M = [[int(x) for x in row] for row in np.asarray(A, dtype=object)]
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular.

    The inverses ``U_inv`` and ``V_inv`` are tracked alongside so that callers
    never need to invert over the integers themselves.
    """

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix
    U_inv: IntegerMatrix
    V_inv: IntegerMatrix

    @property
    def diagonal(self) -> List[int]:
        k = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(k)]

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def smith_normal_form(A: IntegerMatrix) -> SmithDecomposition:
    """Smith normal form by row and column reduction.

    The pivot is always the smallest nonzero entry of the remaining block;
    divisibility of the diagonal is enforced by folding an offending row into
    the pivot row and reducing again.
    """
    A = as_integer_matrix(A, cols=np.asarray(A).shape[1] if np.asarray(A).ndim == 2 else 0)
    m, n = A.shape
    D = [[int(x) for x in row] for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    U_inv = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    V_inv = [[int(i == j) for j in range(n)] for i in range(n)]

    # Row op "row_i += q * row_j": U gets the same op, U_inv the inverse column op.
    def add_row(i: int, j: int, q: int) -> None:
        D[i] = [x + q * y for x, y in zip(D[i], D[j])]
        U[i] = [x + q * y for x, y in zip(U[i], U[j])]
        for row in U_inv:
            row[j] -= q * row[i]

    def swap_rows(i: int, j: int) -> None:
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in U_inv:
            row[i], row[j] = row[j], row[i]

    def negate_row(i: int) -> None:
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for row in U_inv:
            row[i] = -row[i]

    # Column op "col_i += q * col_j": V gets the same op, V_inv the inverse row op.
    def add_col(i: int, j: int, q: int) -> None:
        for row in D:
            row[i] += q * row[j]
        for row in V:
            row[i] += q * row[j]
        V_inv[j] = [x - q * y for x, y in zip(V_inv[j], V_inv[i])]

    def swap_cols(i: int, j: int) -> None:
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    for t in range(min(m, n)):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j] != 0]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // p))
            for j in range(t + 1, n):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // p))
            leftovers = [(abs(D[i][t]), i, t) for i in range(t + 1, m) if D[i][t]]
            leftovers += [(abs(D[t][j]), t, j) for j in range(t + 1, n) if D[t][j]]
            if leftovers:
                _, li, lj = min(leftovers)
                swap_rows(t, li)
                swap_cols(t, lj)
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p != 0),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            negate_row(t)

    result = SmithDecomposition(
        U=as_integer_matrix(U, cols=m),
        D=as_integer_matrix(D, cols=n),
        V=as_integer_matrix(V, cols=n),
        U_inv=as_integer_matrix(U_inv, cols=m),
        V_inv=as_integer_matrix(V_inv, cols=n),
    )
    if not np.array_equal(result.U.dot(A).dot(result.V), result.D):
        raise ArithmeticError("Smith decomposition failed the product check U*A*V == D")
    return result


def solve_diophantine(A: IntegerMatrix, b: Sequence[int]) -> Optional[List[int]]:
    """An integer solution of ``A @ x == b``, or ``None`` when there is none.

    With ``U A V = D`` the system becomes ``D y = U b`` and ``x = V y``; the
    free coordinates of ``y`` are set to zero.
    """
    A = np.asarray(A, dtype=object)
    if A.ndim != 2 or len(b) != A.shape[0]:
        raise ValueError(f"dimension mismatch: matrix has {A.shape[0] if A.ndim == 2 else '?'} rows, rhs has {len(b)}")
    m, n = A.shape
    snf = smith_normal_form(A)
    c = snf.U.dot(np.array([int(x) for x in b], dtype=object)) if m else np.zeros(0, dtype=object)
    diag = snf.diagonal
    y = [0] * n
    for i in range(m):
        d = diag[i] if i < len(diag) else 0
        ci = int(c[i])
        if d == 0:
            if ci != 0:
                return None
        elif ci % d != 0:
            return None
        else:
            y[i] = ci // d
    x = snf.V.dot(np.array(y, dtype=object)) if n else np.zeros(0, dtype=object)
    return [int(v) for v in x]
