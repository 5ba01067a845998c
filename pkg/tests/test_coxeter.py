import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from descent.coxeter import CoxeterType, build_coxeter_system, subset_members
from descent.errors import BudgetExceeded, UnsupportedType

from conftest import algebra

DEGREES = {
    ("A", 3): (2, 3, 4), ("A", 4): (2, 3, 4, 5),
    ("B", 2): (2, 4), ("B", 3): (2, 4, 6), ("B", 4): (2, 4, 6, 8),
    ("D", 4): (2, 4, 6, 4), ("D", 5): (2, 4, 6, 8, 5),
    ("F", 4): (2, 6, 8, 12), ("H", 3): (2, 6, 10), ("H", 4): (2, 12, 20, 30),
    ("E", 6): (2, 5, 6, 8, 9, 12), ("I", 5): (2, 5), ("I", 8): (2, 8),
}

CLASS_COUNTS = {("A", 4): 7, ("B", 3): 10, ("D", 4): 13, ("F", 4): 25, ("H", 3): 10,
                ("H", 4): 34, ("E", 6): 25, ("I", 7): 5, ("I", 8): 7}


def system(family, rank):
    return algebra(family, rank).system


def poincare(degrees):
    poly = np.array([1], dtype=object)
    for d in degrees:
        poly = np.convolve(poly, np.ones(d, dtype=object))
    return [int(c) for c in poly]


@pytest.mark.parametrize("key", sorted(DEGREES))
def test_length_distribution_is_poincare_polynomial(key):
    W = system(*key)
    counts = np.bincount(W.lengths).tolist()
    assert counts == poincare(DEGREES[key])
    assert W.size == CoxeterType.parse(*key).order()
    assert W.lengths[0] == 0


@pytest.mark.parametrize("key", sorted(CLASS_COUNTS))
def test_conjugacy_class_counts(key):
    assert len(system(*key).class_representatives) == CLASS_COUNTS[key]


@pytest.mark.parametrize("family,rank,edges", [
    ("B", 3, {(0, 1): 4, (1, 2): 3}),
    ("D", 4, {(0, 2): 3, (1, 2): 3, (2, 3): 3}),
    ("F", 4, {(0, 1): 3, (1, 2): 4, (2, 3): 3}),
    ("H", 3, {(0, 1): 5, (1, 2): 3}),
    ("I", 7, {(0, 1): 7}),
])
def test_generator_products_have_coxeter_orders(family, rank, edges):
    W = system(family, rank)
    n = W.rank
    for i in range(n):
        assert W.order_of(W.generator(i)) == 2
        for j in range(i + 1, n):
            m = edges.get((i, j), 2)
            assert W.order_of(W.multiply(W.generator(i), W.generator(j))) == m


@pytest.mark.parametrize("key", [("B", 3), ("D", 4), ("H", 3), ("I", 6), ("A", 4)])
def test_coset_representatives(key):
    W = system(*key)
    for J in range(W.nsubsets):
        X = W.coset_reps(J)
        assert len(X) * W.parabolic_order(J) == W.size
        # minimal representatives have no right descents in J
        assert not np.any(W.right_descents[X] & J)


def test_descents_of_generators():
    W = system("B", 4)
    for s in range(W.rank):
        g = W.generator(s)
        assert W.right_descents[g] == 1 << s == W.left_descents[g]
        assert W.lengths[g] == 1


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_group_axioms(data):
    W = system("D", 4)
    u, v, w = (data.draw(st.integers(0, W.size - 1)) for _ in range(3))
    assert W.multiply(W.multiply(u, v), w) == W.multiply(u, W.multiply(v, w))
    assert W.multiply(u, W.inverse(u)) == 0
    assert W.lengths[W.inverse(u)] == W.lengths[u]
    assert W.left_descents[u] == W.right_descents[W.inverse(u)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 2), max_size=12))
def test_word_length_bounded_by_letters(letters):
    W = system("H", 3)
    w = W.word(letters)
    assert W.lengths[w] <= len(letters)
    assert W.lengths[w] % 2 == len(letters) % 2


def test_subset_members_roundtrip():
    for J in range(64):
        assert sum(1 << s for s in subset_members(J)) == J


def test_unsupported_and_budget():
    with pytest.raises(UnsupportedType):
        CoxeterType.parse("E", 8)
    with pytest.raises(UnsupportedType):
        CoxeterType.parse("D", 3)
    with pytest.raises(UnsupportedType):
        CoxeterType.parse("X", 3)
    with pytest.raises(BudgetExceeded):
        build_coxeter_system(CoxeterType.parse("E", 7))
    with pytest.raises(BudgetExceeded):
        build_coxeter_system(CoxeterType.parse("B", 5), budget=1000)


def test_names():
    assert CoxeterType.parse("i", 5).name == "I2(5)"
    assert CoxeterType.parse("I", 5).tag == "I5"
    assert CoxeterType.parse("b", 4).name == "B4"
