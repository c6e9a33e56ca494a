"""Exact integer linear algebra: invariant factors, kernels and images.

Large sparse matrices are first shrunk by eliminating unit pivots (which
contribute invariant factor 1 each); whatever is left is put in Smith
normal form densely with Python integers, so nothing can overflow.
"""
from __future__ import annotations

import heapq
from fractions import Fraction
from math import gcd

import numpy as np
import scipy.sparse as sp

from .fincat import GuardError

DENSE_GUARD = 4000


def _to_rows(M) -> tuple[dict, dict]:
    M = sp.coo_matrix(M)
    rows: dict = {}
    cols: dict = {}
    for r, c, v in zip(M.row.tolist(), M.col.tolist(), M.data.tolist()):
        if v:
            rows.setdefault(r, {})[c] = rows.get(r, {}).get(c, 0) + int(v)
    for r, row in list(rows.items()):
        for c, v in list(row.items()):
            if v == 0:
                del row[c]
            else:
                cols.setdefault(c, set()).add(r)
        if not row:
            del rows[r]
    return rows, cols


def _eliminate_units(rows: dict, cols: dict) -> int:
    """Pivot on ±1 entries (sparse rows first) in place; return the pivot count."""
    heap = [(len(v), r) for r, v in rows.items()]
    heapq.heapify(heap)
    pivots = 0
    while heap:
        length, r = heapq.heappop(heap)
        row = rows.get(r)
        if row is None or len(row) != length:
            continue
        units = [c for c, v in row.items() if v == 1 or v == -1]
        if not units:
            continue
        c = min(units, key=lambda k: len(cols[k]))
        p = row[c]
        for r2 in list(cols[c]):
            if r2 == r:
                continue
            row2 = rows[r2]
            factor = row2[c] * p
            for c2, v in row.items():
                nv = row2.get(c2, 0) - factor * v
                if nv:
                    row2[c2] = nv
                    cols.setdefault(c2, set()).add(r2)
                else:
                    row2.pop(c2, None)
                    cols[c2].discard(r2)
            if row2:
                heapq.heappush(heap, (len(row2), r2))
            else:
                del rows[r2]
        for c2 in row:
            cols[c2].discard(r)
        del rows[r]
        del cols[c]
        pivots += 1
    return pivots


def _dense_diagonal(A: list[list[int]]) -> list[int]:
    """Diagonalize by unimodular row/column operations; return nonzero diagonal."""
    A = [row[:] for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        # smallest nonzero entry in the remaining block
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                v = Ai[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    if q:
                        Ai, At = A[i], A[t]
                        for j in range(t, n):
                            Ai[j] -= q * At[j]
                    if A[i][t]:
                        done = False
            At = A[t]
            for j in range(t + 1, n):
                if At[j]:
                    q = At[j] // p
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if At[j]:
                        done = False
            if done:
                break
            # move the smallest remainder into the pivot position
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                if A[i][t] and abs(A[i][t]) < best[0]:
                    best = (abs(A[i][t]), i, t)
            for j in range(t + 1, n):
                if A[t][j] and abs(A[t][j]) < best[0]:
                    best = (abs(A[t][j]), t, j)
            _, i, j = best
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag


def _normalize(diag: list[int]) -> list[int]:
    """Turn a nonzero diagonal into invariant factors (each divides the next)."""
    d = sorted(diag)
    k = len(d)
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for j in range(i + 1, k):
                a, b = d[i], d[j]
                if b % a:
                    g = gcd(a, b)
                    d[i], d[j] = g, a // g * b
                    changed = True
        d.sort()
    return d


def invariant_factors(M) -> list[int]:
    """Nonzero invariant factors of an integer matrix (length = rank)."""
    if sp.issparse(M):
        shape = M.shape
    else:
        M = np.asarray(M)
        shape = M.shape
    if 0 in shape:
        return []
    rows, cols = _to_rows(M)
    ones = _eliminate_units(rows, cols)
    if not rows:
        return [1] * ones
    rlist = sorted(rows)
    clist = sorted(c for c, s in cols.items() if s)
    if len(rlist) * len(clist) > DENSE_GUARD ** 2:
        raise GuardError(f"Smith normal form residual {len(rlist)}x{len(clist)} too large")
    cidx = {c: i for i, c in enumerate(clist)}
    dense = [[0] * len(clist) for _ in rlist]
    for i, r in enumerate(rlist):
        for c, v in rows[r].items():
            dense[i][cidx[c]] = v
    return [1] * ones + _normalize(_dense_diagonal(dense))


def rank(M) -> int:
    return len(invariant_factors(M))


# ---------------------------------------------------------------------------
# dense helpers for small matrices (lists of Python ints)

def to_int_lists(M) -> list[list[int]]:
    if sp.issparse(M):
        M = M.toarray()
    return [[int(v) for v in row] for row in np.asarray(M)]


def column_hermite(M: list[list[int]], ncols: int | None = None):
    """Column-style Hermite reduction ``M U = H`` with ``U`` unimodular.

    Returns ``(H, U)`` as lists of columns; nonzero columns of ``H`` come
    first and span the column lattice of ``M``; the columns of ``U``
    matching zero columns of ``H`` form a lattice basis of the kernel.
    """
    m = len(M)
    n = ncols if ncols is not None else (len(M[0]) if m else 0)
    H = [[M[i][j] for i in range(m)] for j in range(n)]
    U = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    piv = 0
    for i in range(m):
        if piv >= n:
            break
        while True:
            nz = [j for j in range(piv, n) if H[j][i]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(H[j][i]))
            H[piv], H[j0] = H[j0], H[piv]
            U[piv], U[j0] = U[j0], U[piv]
            p = H[piv][i]
            clean = True
            for j in range(piv + 1, n):
                if H[j][i]:
                    q = H[j][i] // p
                    Hj, Hp, Uj, Up = H[j], H[piv], U[j], U[piv]
                    for k in range(m):
                        Hj[k] -= q * Hp[k]
                    for k in range(n):
                        Uj[k] -= q * Up[k]
                    if H[j][i]:
                        clean = False
            if clean:
                break
        if H[piv][i]:
            piv += 1
    return H, U, piv


def kernel_basis(M) -> list[list[int]]:
    """Lattice basis of the integer kernel of ``M`` (as columns)."""
    A = to_int_lists(M)
    n = np.asarray(M.shape)[1] if hasattr(M, "shape") else (len(A[0]) if A else 0)
    if not A:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    H, U, r = column_hermite(A, n)
    return [U[j] for j in range(r, n)]


def image_basis(M) -> list[list[int]]:
    """Lattice basis of the integer column span of ``M`` (as columns)."""
    A = to_int_lists(M)
    if not A:
        return []
    H, U, r = column_hermite(A)
    return [H[j] for j in range(r)]


def solve_rational(B: list[list[int]], v: list[int]):
    """Solve ``sum_j y_j B[j] = v`` (``B`` a list of independent columns).

    Returns a list of Fractions or ``None`` if ``v`` is not in the span.
    """
    m = len(v)
    k = len(B)
    rows = [[Fraction(B[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pr = rows[r]
        inv = 1 / pr[c]
        rows[r] = pr = [x * inv for x in pr]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], pr)]
        piv_cols.append(c)
        r += 1
    if any(rows[i][k] != 0 for i in range(r, m)):
        return None
    y = [Fraction(0)] * k
    for i, c in enumerate(piv_cols):
        y[c] = rows[i][k]
    return y


def in_integer_span(B: list[list[int]], v: list[int]) -> bool:
    """Whether ``v`` is an integer combination of the columns ``B``."""
    if not any(v):
        return True
    if not B:
        return False
    basis = image_basis(np.array(B, dtype=object).T.tolist()) if B else []
    if not basis:
        return False
    y = solve_rational(basis, v)
    return y is not None and all(x.denominator == 1 for x in y)
