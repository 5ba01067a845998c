import pytest
from hypothesis import given
from hypothesis import strategies as st

from descent import labels as lab

from conftest import algebra


def test_partition_counts():
    assert [len(lab.partitions(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert lab.partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))
    assert len(lab.partitions_upto(4)) == 12


@given(st.integers(0, 12), st.sampled_from([2, 3, 5]))
def test_regular_partitions(n, p):
    regular = lab.regular_partitions_upto(n, p)
    for lam in regular:
        assert all(lam.count(x) < p for x in lam)
    # p-regular partitions of m are equinumerous with partitions into parts prime to p
    for m in range(n + 1):
        count = sum(1 for lam in lab.partitions(m) if lab.is_p_regular(lam, p))
        assert count == sum(1 for lam in lab.partitions(m) if all(x % p for x in lam))


def test_format():
    assert lab.format_partition((3, 1)) == "(3,1)"
    assert lab.format_partition(()) == "()"
    assert str(lab.DLabel((2, 2), "+")) == "(2,2)+"
    assert lab.members_string(0b101) == "{0,2}"


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_type_b_labels_and_normalizers(n):
    alg = algebra("B", n)
    labels = [lab.type_b_label(K, n) for K in alg.reps]
    assert sorted(labels) == sorted(lab.partitions_upto(n))
    for lam in lab.partitions_upto(n):
        J = lab.type_b_representative(lam, n)
        assert lab.type_b_label(J, n) == lam
        assert alg.normalizer_index(J) == lab.type_b_normalizer_index(lam)
    for cls in alg.classes:
        assert len({lab.type_b_label(J, n) for J in cls}) == 1


@pytest.mark.parametrize("n", [4, 5, 6])
def test_type_d_labels_and_normalizers(n):
    alg = algebra("D", n)
    assert len(alg.reps) == len(lab.gamma(n))
    assert sorted(map(str, (lab.type_d_label(K, n) for K in alg.reps))) == sorted(map(str, lab.gamma(n)))
    for label in lab.gamma(n):
        J = lab.type_d_representative(label, n)
        assert lab.type_d_label(J, n) == label
        assert alg.normalizer_index(J) == lab.type_d_normalizer_index(label, n)
    for cls in alg.classes:
        assert len({str(lab.type_d_label(J, n)) for J in cls}) == 1


def test_gamma_sizes():
    assert [len(lab.gamma(n)) for n in (4, 5, 6)] == [11, 14, 26]
    # one label survives at p = 2 for even n, two for odd n
    assert [len(lab.gamma_p(n, 2)) for n in (4, 5, 6)] == [1, 2, 1]


def test_sort_key_orders_by_size_then_partition():
    keys = sorted([(1,), (2, 1), (3,), ()], key=lab.label_sort_key)
    assert keys == [(3,), (2, 1), (1,), ()]
    signed = sorted([lab.DLabel((2, 2), "-"), lab.DLabel((2, 2), "+")], key=lab.label_sort_key)
    assert [s.sign for s in signed] == ["+", "-"]
