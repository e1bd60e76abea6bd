"""Small exact linear algebra: integer row echelon forms and rational kernels."""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from orush.arith.integers import xgcd


def integer_echelon(rows: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[list[list[int]], list[list[int]]]:
    """Row-reduce an integer matrix by unimodular row operations.

    Returns ``(H, U)`` with ``U @ rows == H``, ``U`` unimodular and ``H`` in
    row echelon form with positive pivots and entries above each pivot reduced
    into ``[0, pivot)``.  Zero rows of ``H`` are kept at the bottom, so the
    matching rows of ``U`` span the integer left kernel.
    """
    m = len(rows)
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    H = [list(r) for r in rows]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    r = 0
    for col in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            if H[i][col] == 0:
                continue
            a, b = H[r][col], H[i][col]
            g, s, t = xgcd(a, b)
            ua, ub = a // g, b // g
            H[r], H[i] = (
                [s * x + t * y for x, y in zip(H[r], H[i])],
                [ua * y - ub * x for x, y in zip(H[r], H[i])],
            )
            U[r], U[i] = (
                [s * x + t * y for x, y in zip(U[r], U[i])],
                [ua * y - ub * x for x, y in zip(U[r], U[i])],
            )
        if H[r][col] == 0:
            continue
        if H[r][col] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        piv = H[r][col]
        for i in range(r):
            q = H[i][col] // piv
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                U[i] = [x - q * y for x, y in zip(U[i], U[r])]
        r += 1
    return H, U


def integer_kernel(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """A basis of ``{u in Z^m : u @ rows == 0}``."""
    H, U = integer_echelon(rows)
    return [U[i] for i in range(len(H)) if not any(H[i])]


def rational_kernel(cols: Sequence[Sequence[Any]], nrows: int, field: Any = None) -> list[list[Any]]:
    """Right kernel ``{v : sum_j v_j * cols[j] == 0}`` as a basis list.

    Entries are taken in ``Q`` unless a field tag such as ``GF(p)`` is given.
    """
    conv = field if field is not None else Fraction
    ncols = len(cols)
    A = [[conv(cols[j][i]) for j in range(ncols)] for i in range(nrows)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if A[i][c] != 0), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(nrows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [conv(0)] * ncols
        v[fc] = conv(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc]
        basis.append(v)
    return basis
