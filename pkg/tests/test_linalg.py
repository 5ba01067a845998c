from fractions import Fraction

import numpy as np
import pytest
import sympy
from sympy.polys.matrices import DomainMatrix
from hypothesis import given, settings
from hypothesis import strategies as st

from descent.linalg import (echelon_int, in_span_q, nullspace_mod, nullspace_q, rank_mod,
                            rank_q, rref_mod, rref_q, solve_mod, solve_q)

PRIMES = [2, 3, 5, 7]


def int_matrices(max_side=6, lo=-6, hi=6):
    return st.integers(1, max_side).flatmap(lambda r: st.integers(1, max_side).flatmap(
        lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@settings(max_examples=80, deadline=None)
@given(int_matrices(), st.sampled_from(PRIMES))
def test_rank_mod_matches_sympy(rows, p):
    M = np.array(rows, dtype=np.int64)
    gf = sympy.GF(p)

    dm = DomainMatrix([[gf(int(x)) for x in r] for r in rows], M.shape, gf)
    expected = dm.rank()
    assert rank_mod(M, p) == expected


@settings(max_examples=80, deadline=None)
@given(int_matrices(), st.sampled_from(PRIMES))
def test_rref_mod_is_reduced_and_spans(rows, p):
    M = np.array(rows, dtype=np.int64)
    R, piv = rref_mod(M, p)
    assert len(R) == len(piv) == rank_mod(M, p)
    for i, c in enumerate(piv):
        assert R[i, c] == 1
        assert np.count_nonzero(R[:, c]) == 1
    # same row space
    assert rank_mod(np.vstack([R, M]), p) == len(R)


@settings(max_examples=80, deadline=None)
@given(int_matrices(), st.sampled_from(PRIMES))
def test_nullspace_mod(rows, p):
    M = np.array(rows, dtype=np.int64)
    N = nullspace_mod(M, p)
    assert len(N) == M.shape[1] - rank_mod(M, p)
    if len(N):
        assert not np.any((M @ N.T) % p)


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_rank_q_matches_sympy(rows):
    assert rank_q(np.array(rows)) == sympy.Matrix(rows).rank()


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_rref_q_matches_sympy(rows):
    R, piv = rref_q(np.array(rows))
    S, spiv = sympy.Matrix(rows).rref()
    assert tuple(piv) == tuple(spiv)
    for i in range(len(piv)):
        assert [Fraction(x) for x in R[i]] == [Fraction(int(x.p), int(x.q)) for x in S.row(i)]


@settings(max_examples=60, deadline=None)
@given(int_matrices())
def test_nullspace_q(rows):
    M = np.array(rows, dtype=object)
    N = nullspace_q(M)
    assert len(N) == M.shape[1] - sympy.Matrix(rows).rank()
    for v in N:
        assert all(x == 0 for x in M.dot(v))


def test_echelon_int_handles_big_entries():
    big = 10**30
    M = np.array([[big, 1], [2 * big, 2], [1, big]], dtype=object)
    E, piv = echelon_int(M)
    assert len(piv) == 2


def test_solvers():
    M = np.array([[1, 2], [3, 4]])
    x = solve_q(M, [5, 6])
    assert list(M.dot(np.array(x, dtype=object))) == [5, 6]
    y = solve_mod(M, [1, 1], 5)
    assert not np.any((M @ y - [1, 1]) % 5)
    with pytest.raises(ValueError):
        solve_q(np.array([[1, 1], [2, 2]]), [1, 3])
    assert in_span_q([[1, 2, 3]], [Fraction(1, 2), 1, Fraction(3, 2)])
    assert not in_span_q([[1, 2, 3]], [1, 0, 0])
