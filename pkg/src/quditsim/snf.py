"""Exact integer Smith normal form and modular linear solvers.

All arithmetic uses Python integers, so there is no overflow for any input
size; the matrices handled here are small (a few dozen rows at most).

smith_normal_form factors an integer matrix as u @ s @ v with u and v
unimodular and s diagonal with nonnegative entries forming a divisibility
chain s[0,0] | s[1,1] | ...  The inverses of u and v are tracked during the
elimination and returned alongside, so callers can move between a @ y = b
and s @ w = u_inv @ b without inverting anything.  Solvers for a @ y = b
over the integers and modulo an arbitrary m >= 2 are built on top; the
modular forms augment the matrix with m times the identity so the Smith
machinery does all the work.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _to_int_rows(a) -> list[list[int]]:
    arr = np.atleast_2d(np.asarray(a, dtype=object))
    return [[int(x) for x in row] for row in arr]


def _eye(k: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


@dataclass(frozen=True)
class SNFResult:
    """Factorization u @ s @ v = a (exact, or elementwise mod `modulus`).

    u and v are unimodular; s is diagonal, nonnegative, and its nonzero
    entries form a divisibility chain before any modular reduction.  u_inv
    and v_inv are the tracked inverses of u and v.  When a modulus is given
    all five matrices are reduced elementwise into [0, modulus), the
    factorization holds mod modulus, and the chain is guaranteed only for
    the underlying integer factors.
    """

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray
    u_inv: np.ndarray
    v_inv: np.ndarray
    modulus: int | None = None


def smith_normal_form(a, modulus: int | None = None) -> SNFResult:
    """Diagonalize an integer matrix over Z, optionally reducing mod modulus.

    Pivots are chosen smallest in magnitude (lowest row then column index on
    ties), which keeps intermediate entries modest; the divisibility chain
    is enforced by folding any offending row into the pivot row and
    re-eliminating.
    """
    s = _to_int_rows(a)
    m, n = len(s), len(s[0])
    u = _eye(m)
    u_inv = _eye(m)
    v = _eye(n)
    v_inv = _eye(n)

    def row_op(dst, src, c):
        # s <- E s with E = I + c e_{dst,src}; u <- u E^-1 keeps u s v fixed
        s[dst] = [p + c * q for p, q in zip(s[dst], s[src])]
        u_inv[dst] = [p + c * q for p, q in zip(u_inv[dst], u_inv[src])]
        for row in u:
            row[src] -= c * row[dst]

    def col_op(dst, src, c):
        # s <- s F with F = I + c e_{src,dst}; v <- F^-1 v
        for row in s:
            row[dst] += c * row[src]
        for row in v_inv:
            row[dst] += c * row[src]
        v[src] = [p - c * q for p, q in zip(v[src], v[dst])]

    def row_swap(i, k):
        s[i], s[k] = s[k], s[i]
        u_inv[i], u_inv[k] = u_inv[k], u_inv[i]
        for row in u:
            row[i], row[k] = row[k], row[i]

    def col_swap(j, k):
        for row in s:
            row[j], row[k] = row[k], row[j]
        for row in v_inv:
            row[j], row[k] = row[k], row[j]
        v[j], v[k] = v[k], v[j]

    def row_negate(i):
        s[i] = [-x for x in s[i]]
        u_inv[i] = [-x for x in u_inv[i]]
        for row in u:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if s[i][j] and (piv is None or abs(s[i][j]) < abs(s[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])

        dirty = False
        for i in range(m):
            if i != t and s[i][t]:
                row_op(i, t, -(s[i][t] // s[t][t]))
                if s[i][t]:
                    dirty = True
        for j in range(n):
            if j != t and s[t][j]:
                col_op(j, t, -(s[t][j] // s[t][t]))
                if s[t][j]:
                    dirty = True
        if dirty:
            # a remainder smaller than the pivot appeared; reselect
            continue

        offender = None
        for i in range(t + 1, m):
            if any(s[i][j] % s[t][t] for j in range(t + 1, n)):
                offender = i
                break
        if offender is not None:
            row_op(t, offender, 1)
            continue

        if s[t][t] < 0:
            row_negate(t)
        t += 1

    def to_obj(rows):
        arr = np.array(rows, dtype=object)
        if modulus is not None:
            arr = arr % modulus
        return arr

    return SNFResult(to_obj(u), to_obj(s), to_obj(v),
                     to_obj(u_inv), to_obj(v_inv), modulus)


def integer_determinant(a) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    mat = _to_int_rows(a)
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if mat[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if mat[i][k]), None)
            if swap is None:
                return 0
            mat[k], mat[swap] = mat[swap], mat[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                mat[i][j] = (mat[i][j] * mat[k][k] - mat[i][k] * mat[k][j]) // prev
        prev = mat[k][k]
    return sign * mat[n - 1][n - 1]


def solve_integer(a, b):
    """One integer solution of a @ y = b, or None."""
    res = smith_normal_form(a)
    s, ui, vi = res.s, res.u_inv, res.v_inv
    m, n = s.shape
    c = [sum(int(ui[i][k]) * int(bk) for k, bk in enumerate(b)) for i in range(m)]
    w = [0] * n
    for i in range(min(m, n)):
        di = int(s[i][i])
        if di:
            if c[i] % di:
                return None
            w[i] = c[i] // di
        elif c[i]:
            return None
    for i in range(min(m, n), m):
        if c[i]:
            return None
    return [sum(int(vi[i][k]) * w[k] for k in range(n)) for i in range(len(vi))]


def kernel_integer(a):
    """Basis (list of integer vectors) of the kernel of a over the integers."""
    res = smith_normal_form(a)
    s, vi = res.s, res.v_inv
    m, n = s.shape
    free = [i for i in range(n) if i >= min(m, n) or int(s[i][i]) == 0]
    return [[int(vi[row][i]) for row in range(n)] for i in free]


def _augment_mod(a, m: int):
    rows = _to_int_rows(a)
    k = len(rows[0])
    return [row + [m if i == j else 0 for j in range(len(rows))]
            for i, row in enumerate(rows)], k


def solve_mod(a, b, m: int):
    """One integer solution of a @ y = b (mod m), or None."""
    aug, k = _augment_mod(a, m)
    y = solve_integer(aug, b)
    return None if y is None else y[:k]


def kernel_mod(a, m: int):
    """Lattice basis of {y : a @ y = 0 (mod m)} as integer vectors."""
    aug, k = _augment_mod(a, m)
    return [vec[:k] for vec in kernel_integer(aug)]
