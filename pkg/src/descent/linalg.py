"""
Exact linear algebra over prime fields and the rationals.

Modular routines work on ``int64`` arrays reduced into ``[0, p)``.  Rational
routines run fraction-free on integer matrices stored with ``dtype=object``
(Python ints never overflow); rows are divided by their content after every
elimination step to keep entries small.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np


# ---------------------------------------------------------------- modular

def rref_mod(M, p: int):
    """Reduced row echelon form mod p.  Returns (R, pivot_columns) with R's zero rows dropped."""
    A = np.array(M, dtype=np.int64) % p
    if A.ndim == 1:
        A = A[None, :]
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if len(nz) == 0:
            continue
        k = r + nz[0]
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if len(hit):
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank_mod(M, p: int) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref_mod(M, p)[1])


def nullspace_mod(M, p: int) -> np.ndarray:
    """Basis (rows) of {v : M v = 0} over F_p."""
    M = np.asarray(M, dtype=np.int64)
    cols = M.shape[1]
    R, piv = rref_mod(M, p) if M.shape[0] else (np.zeros((0, cols), np.int64), [])
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        out[i, f] = 1
        for r, c in enumerate(piv):
            out[i, c] = (-R[r, f]) % p
    return out


def solve_mod(M, b, p: int) -> np.ndarray:
    """One solution x of M x = b mod p; raises ValueError if inconsistent."""
    M = np.asarray(M, dtype=np.int64)
    aug = np.concatenate([M, np.asarray(b, dtype=np.int64).reshape(-1, 1)], axis=1)
    R, piv = rref_mod(aug, p)
    if piv and piv[-1] == M.shape[1]:
        raise ValueError("inconsistent system")
    x = np.zeros(M.shape[1], dtype=np.int64)
    for r, c in enumerate(piv):
        x[c] = R[r, -1]
    return x


# ---------------------------------------------------------------- rational

def _as_int_rows(M) -> np.ndarray:
    A = np.array(M, dtype=object)
    if A.ndim == 1:
        A = A[None, :]
    return A


def _primitive(rows: np.ndarray) -> np.ndarray:
    if rows.shape[0] == 0:
        return rows
    g = np.gcd.reduce(rows, axis=1)
    g[g == 0] = 1
    return rows // g[:, None]


def echelon_int(M):
    """
    Fraction-free row echelon form of an integer matrix.

    Returns (E, pivots): E has one primitive integer row per pivot and
    E[i, pivots[i]] > 0; entries left of each pivot vanish.
    """
    rows = _primitive(_as_int_rows(M))
    rows = rows[np.any(rows != 0, axis=1)]
    ncols = rows.shape[1] if rows.ndim == 2 else 0
    basis, pivots = [], []
    for c in range(ncols):
        if rows.shape[0] == 0:
            break
        col = rows[:, c]
        nz = np.flatnonzero(col != 0)
        if len(nz) == 0:
            continue
        k = nz[np.argmin(np.abs(col[nz]))]
        prow = rows[k].copy()
        if prow[c] < 0:
            prow = -prow
        rows = np.delete(rows, k, axis=0)
        hit = np.flatnonzero(rows[:, c] != 0)
        if len(hit):
            sub = rows[hit]
            sub = sub * prow[c] - np.outer(sub[:, c], prow)
            rows[hit] = _primitive(sub)
            rows = rows[np.any(rows != 0, axis=1)]
        basis.append(prow)
        pivots.append(c)
    if not basis:
        return np.zeros((0, ncols), dtype=object), []
    return np.array(basis, dtype=object), pivots


def rank_q(M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(echelon_int(M)[1])


def rref_q(M):
    """Reduced row echelon form over Q as Fractions.  Accepts integer or Fraction input."""
    A = _clear_denominators(M)
    E, piv = echelon_int(A)
    R = np.empty(E.shape, dtype=object)
    for idx, x in np.ndenumerate(E):
        R[idx] = Fraction(x)
    for i in range(len(piv) - 1, -1, -1):
        R[i] = R[i] / R[i, piv[i]]
        for j in range(i):
            f = R[j, piv[i]]
            if f != 0:
                R[j] = R[j] - f * R[i]
    return R, piv


def _clear_denominators(M) -> np.ndarray:
    A = _as_int_rows(M)
    out = np.empty(A.shape, dtype=object)
    for i, row in enumerate(A):
        den = 1
        for x in row:
            if isinstance(x, Fraction):
                den = den * x.denominator // np.gcd(den, x.denominator)
        out[i] = [int(Fraction(x) * den) for x in row]
    return out


def nullspace_q(M) -> np.ndarray:
    """Integer basis (rows) of the rational null space {v : M v = 0}."""
    A = _clear_denominators(M)
    cols = A.shape[1]
    if A.shape[0] == 0 or not np.any(A != 0):
        return np.eye(cols, dtype=np.int64).astype(object)
    R, piv = rref_q(A)
    free = [c for c in range(cols) if c not in set(piv)]
    out = np.zeros((len(free), cols), dtype=object)
    for i, f in enumerate(free):
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -R[r, f]
        den = 1
        for x in v:
            den = den * x.denominator // np.gcd(den, x.denominator)
        out[i] = [int(x * den) for x in v]
    return _primitive(out)


def solve_q(M, b):
    """One rational solution x of M x = b; raises ValueError if inconsistent."""
    A = np.concatenate([_as_int_rows(M), _as_int_rows(b).reshape(-1, 1)], axis=1)
    R, piv = rref_q(A)
    ncols = A.shape[1] - 1
    if piv and piv[-1] == ncols:
        raise ValueError("inconsistent system")
    x = np.array([Fraction(0)] * ncols, dtype=object)
    for r, c in enumerate(piv):
        x[c] = R[r, -1]
    return x


def in_span_q(basis, v) -> bool:
    """Is v in the row span of basis (rational)?"""
    B = _as_int_rows(basis)
    return rank_q(np.vstack([B, _clear_denominators([v])])) == rank_q(B)


def coordinates_in_echelon(E, pivots, v):
    """Coefficients c with v = sum c_i E_i (exact), assuming v lies in the span."""
    v = np.array([Fraction(x) for x in v], dtype=object)
    c = []
    for row, p in zip(E, pivots):
        f = v[p] / row[p]
        c.append(f)
        v = v - f * row
    if any(x != 0 for x in v):
        raise ValueError("vector not in span")
    return c
