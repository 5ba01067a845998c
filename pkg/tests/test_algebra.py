from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from descent.algebra import (StructureConstants, multiply, oracle_structure_constants,
                             surjection_b, surjection_d)
from descent.coxeter import subset_size
from descent.errors import BasisExpansionFailed, FieldMismatch

from conftest import algebra

ORACLE_CASES = [("B", 2), ("B", 3), ("D", 4), ("H", 3), ("A", 2), ("A", 3), ("A", 4)] + \
    [("I", m) for m in range(3, 9)]


@pytest.mark.parametrize("key", ORACLE_CASES, ids=lambda k: f"{k[0]}{k[1]}")
def test_structure_constants_match_group_algebra(key):
    alg = algebra(*key)
    assert oracle_structure_constants(alg.system) == alg.sc


def test_oracle_budget():
    with pytest.raises(BasisExpansionFailed):
        oracle_structure_constants(algebra("E", 6).system)


@pytest.mark.parametrize("key", [("B", 4), ("D", 5), ("F", 4), ("H", 4), ("E", 6), ("I", 9)])
def test_unit_and_associativity(key):
    alg = algebra(*key)
    T = alg.tensor.astype(object)
    full = alg.system.full
    eye = np.eye(alg.dim, dtype=np.int64)
    assert np.array_equal(alg.tensor[full], eye)
    assert np.array_equal(alg.tensor[:, full], eye)
    rng = np.random.default_rng(7)
    for _ in range(3):
        u, v, w = (rng.integers(-3, 4, alg.dim).astype(object) for _ in range(3))
        uv = np.tensordot(np.tensordot(u, T, axes=(0, 0)), v, axes=(0, 0))
        vw = np.tensordot(np.tensordot(v, T, axes=(0, 0)), w, axes=(0, 0))
        left = np.tensordot(np.tensordot(uv, T, axes=(0, 0)), w, axes=(0, 0))
        right = np.tensordot(np.tensordot(u, T, axes=(0, 0)), vw, axes=(0, 0))
        assert np.array_equal(left, right)


@pytest.mark.parametrize("key", [("B", 3), ("D", 4), ("H", 3), ("F", 4), ("I", 6)])
def test_product_support_and_nonnegativity(key):
    alg = algebra(*key)
    T = alg.tensor
    assert T.min() >= 0
    J, K, L = np.nonzero(T)
    # x_J x_K lies in the span of x_L with L inside K
    assert np.all((L & ~K) == 0)


@pytest.mark.parametrize("key", [("B", 4), ("D", 4), ("H", 3), ("A", 4), ("E", 6)])
def test_marks_are_triangular_and_multiplicative(key):
    alg = algebra(*key)
    M = alg.marks_table()
    R = len(alg.reps)
    for i in range(R):
        for j in range(i + 1, R):
            assert M[i, j] == 0
    assert all(M[i, i] > 0 for i in range(R))
    # theta(x_J x_K) = theta(x_J) theta(x_K) at every representative
    for J in range(alg.dim):
        for K in range(alg.dim):
            assert np.array_equal(alg.tensor[J, K] @ alg.marks, alg.marks[J] * alg.marks[K])


@pytest.mark.parametrize("key", [("B", 3), ("D", 4), ("H", 3), ("A", 3)])
def test_theta_is_multiplicative_on_conjugacy_classes(key):
    alg = algebra(*key)
    rng = np.random.default_rng(3)
    for _ in range(4):
        u, v = (rng.integers(-2, 3, alg.dim) for _ in range(2))
        uv = alg.mul(u.astype(object), v.astype(object), 0)
        assert list(alg.theta_character(uv)) == list(alg.theta_character(u) * alg.theta_character(v))


def test_marks_of_b3():
    # rows and columns ordered by size, then partition
    alg = algebra("B", 3)
    assert [alg.display(K) for K in alg.reps] == ["(1,1,1)", "(2,1)", "(1,1)", "(3)", "(2)", "(1)", "()"]
    assert alg.marks_table().tolist() == [
        [48, 0, 0, 0, 0, 0, 0],
        [24, 4, 0, 0, 0, 0, 0],
        [24, 0, 8, 0, 0, 0, 0],
        [8, 4, 0, 2, 0, 0, 0],
        [12, 2, 4, 0, 2, 0, 0],
        [6, 2, 4, 0, 0, 2, 0],
        [1, 1, 1, 1, 1, 1, 1],
    ]


# ---------------------------------------------------------------- dihedral

def dihedral_table(n):
    """Products of the basis 1, x1, x2, x3 written in that basis."""
    l, e = n // 2, int(n % 2 == 0)
    return {
        ("x1", "x1"): {"x1": 1 + e, "x3": l - e},
        ("x1", "x2"): {"x2": 1 - e, "x3": l},
        ("x2", "x1"): {"x1": 1 - e, "x3": l},
        ("x2", "x2"): {"x2": 1 + e, "x3": l - e},
        ("x1", "x3"): {"x3": n}, ("x2", "x3"): {"x3": n},
        ("x3", "x1"): {"x3": n}, ("x3", "x2"): {"x3": n},
        ("x3", "x3"): {"x3": 2 * n},
    }


@pytest.mark.parametrize("n", range(3, 13))
def test_dihedral_multiplication_table(n):
    alg = algebra("I", n)
    basis = {"1": 0b11, "x1": 0b01, "x2": 0b10, "x3": 0}
    for (a, b), terms in dihedral_table(n).items():
        expected = np.zeros(4, dtype=np.int64)
        for name, c in terms.items():
            expected[basis[name]] += c
        assert alg.tensor[basis[a], basis[b]].tolist() == expected.tolist()
    for name, J in basis.items():
        assert alg.tensor[0b11, J].tolist() == np.eye(4, dtype=int)[J].tolist()


# ---------------------------------------------------------------- surjections

def _is_homomorphism(src, dst, f, p=0):
    rank = src.rank
    for J in range(src.dim):
        for K in range(src.dim):
            lhs = f(src.tensor[J, K], rank)
            fj = f(np.eye(src.dim, dtype=np.int64)[J], rank)
            fk = f(np.eye(src.dim, dtype=np.int64)[K], rank)
            rhs = np.tensordot(np.tensordot(fj, dst.tensor, axes=(0, 0)), fk, axes=(0, 0))
            if p:
                lhs, rhs = lhs % p, rhs % p
            if not np.array_equal(lhs, rhs):
                return False
    one = f(np.eye(src.dim, dtype=np.int64)[src.system.full], rank)
    return one.tolist() == np.eye(dst.dim, dtype=int)[dst.system.full].tolist()


@pytest.mark.parametrize("n", [2, 3, 4])
def test_type_b_surjection_is_homomorphism(n):
    assert _is_homomorphism(algebra("B", n + 1), algebra("B", n), surjection_b)


@pytest.mark.parametrize("n", [4, 5])
def test_type_d_surjection_is_homomorphism(n):
    assert _is_homomorphism(algebra("D", n), algebra("B", n - 2), surjection_d)


def _gamma_on_complements(u, rank_from):
    """x_J -> x_{J-2} when J misses both fork nodes; the form valid for the complement basis."""
    out = np.zeros(1 << (rank_from - 2), dtype=u.dtype)
    for K in np.flatnonzero(u):
        if K & 3 == 0:
            out[K >> 2] += u[K]
    return out


@pytest.mark.parametrize("n", [4, 5])
def test_complement_form_of_type_d_map_is_not_multiplicative(n):
    assert not _is_homomorphism(algebra("D", n), algebra("B", n - 2), _gamma_on_complements)


# ---------------------------------------------------------------- elements

def test_field_mismatch():
    alg = algebra("B", 2)
    a = alg.element([1, 0, 0, 1], 3)
    b = alg.element([1, 0, 0, 1], 5)
    with pytest.raises(FieldMismatch):
        a + b
    with pytest.raises(FieldMismatch):
        multiply(a, b, alg.sc)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=8, max_size=8),
       st.lists(st.integers(-4, 4), min_size=8, max_size=8),
       st.sampled_from([0, 2, 3, 5]))
def test_reduction_mod_p_commutes_with_products(u, v, p):
    alg = algebra("B", 3)
    exact = multiply(alg.element(u, 0), alg.element(v, 0), alg.sc).coeffs
    if p == 0:
        assert all(Fraction(x).denominator == 1 for x in exact)
        return
    modp = multiply(alg.element(u, p), alg.element(v, p), alg.sc).coeffs
    assert [int(x) % p for x in exact] == modp.tolist()


def test_jsonl_roundtrip(tmp_path):
    alg = algebra("D", 4)
    path = tmp_path / "d4.jsonl"
    alg.sc.to_jsonl(path)
    assert StructureConstants.from_jsonl(path) == alg.sc


def test_dimension_is_number_of_subsets():
    for key in [("B", 4), ("H", 3), ("I", 5)]:
        alg = algebra(*key)
        assert alg.dim == 2 ** alg.rank
        assert sum(1 for J in range(alg.dim) if subset_size(J) == 0) == 1
