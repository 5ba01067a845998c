"""
Partition labels for conjugacy classes of parabolic subgroups in types B and D.

Type B_n: generator 0 is the sign change on position 1 and generator i >= 1
swaps positions i and i+1.  A subset J splits into a hyperoctahedral part on
positions 1..m0 (generators 0..m0-1 all in J) and a Young subgroup on the
remaining positions, whose block sizes form the composition q_J.

Type D_n: generator 0 is u (swap-and-negate positions 1, 2), generator i >= 1
swaps positions i and i+1.  If u and t_1 both lie in J the subset has a
D_k factor on positions 1..k (k >= 2) and the label is a partition of n-k.
Otherwise J acts like a Young subgroup on all n positions; positions 1, 2 are
joined by whichever of u, t_1 is present, which becomes the sign of an
all-even label.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod

from .coxeter import subset_members
from .errors import WrongFamily


Partition = tuple


@lru_cache(maxsize=None)
def partitions(n: int) -> tuple:
    """Partitions of n as weakly decreasing tuples, reverse lexicographic order."""
    if n == 0:
        return ((),)
    out = []

    def rec(rest, cap, acc):
        if rest == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rest, cap), 0, -1):
            acc.append(part)
            rec(rest - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return tuple(out)


def partitions_upto(n: int) -> list:
    return [lam for m in range(n + 1) for lam in partitions(m)]


def is_p_regular(lam: Partition, p: int) -> bool:
    """Fewer than p copies of every part (always true at p = 0)."""
    if p == 0:
        return True
    return all(c < p for c in Counter(lam).values())


def regular_partitions_upto(n: int, p: int) -> list:
    return [lam for lam in partitions_upto(n) if is_p_regular(lam, p)]


def _blocks(J: int, positions: range, joiner) -> list:
    """Sizes of maximal runs of positions joined by generators in J."""
    sizes = []
    run = 0
    for pos in positions:
        run += 1
        g = joiner(pos)
        if g is None or not (J >> g) & 1:
            sizes.append(run)
            run = 0
    return sizes


# ----------------------------------------------------------------- type B

def type_b_composition(J: int, n: int):
    """(m0, q_J) for J inside B_n."""
    m0 = 0
    while m0 < n and (J >> m0) & 1:
        m0 += 1
    comp = _blocks(J, range(m0 + 1, n + 1), lambda pos: pos if pos < n else None)
    return m0, tuple(comp)


def type_b_label(J: int, n: int) -> Partition:
    return tuple(sorted(type_b_composition(J, n)[1], reverse=True))


def type_b_representative(lam: Partition, n: int) -> int:
    """Subset with label lam whose Young blocks appear in decreasing order."""
    m0 = n - sum(lam)
    if m0 < 0:
        raise ValueError(f"{lam} is too large for B_{n}")
    J = (1 << m0) - 1
    pos = m0 + 1
    for part in sorted(lam, reverse=True):
        for i in range(pos, pos + part - 1):
            J |= 1 << i
        pos += part
    return J


def type_b_normalizer_index(lam: Partition) -> int:
    """2^t * prod(a_i!) for a label with t parts and a_i parts equal to i."""
    return 2 ** len(lam) * prod(factorial(c) for c in Counter(lam).values())


# ----------------------------------------------------------------- type D

@dataclass(frozen=True, order=True)
class DLabel:
    """A partition with an optional sign; the sign is '+' or '-' only for all-even partitions of n."""

    partition: Partition
    sign: str = ""

    def __str__(self) -> str:
        return format_partition(self.partition) + self.sign


def is_all_even(lam: Partition) -> bool:
    return len(lam) > 0 and all(part % 2 == 0 for part in lam)


def type_d_composition(J: int, n: int):
    """(k, mu_J, sign): k is the rank of the D factor (0 if none)."""
    u_in, t1_in = bool(J & 1), bool(J & 2)
    if u_in and t1_in:
        k = 2
        while k < n and (J >> k) & 1:
            k += 1
        comp = _blocks(J, range(k + 1, n + 1), lambda pos: pos if pos < n else None)
        return k, tuple(comp), ""

    def joiner(pos):
        if pos == 1:
            return 0 if u_in else 1
        return pos if pos < n else None

    comp = tuple(_blocks(J, range(1, n + 1), joiner))
    sign = "+" if t1_in else "-" if u_in else ""
    return 0, comp, sign


def type_d_label(J: int, n: int) -> DLabel:
    k, comp, sign = type_d_composition(J, n)
    lam = tuple(sorted(comp, reverse=True))
    if k == 0 and is_all_even(lam):
        return DLabel(lam, sign)
    return DLabel(lam)


def type_d_representative(label: DLabel, n: int) -> int:
    lam = sorted(label.partition, reverse=True)
    m = sum(lam)
    if m <= n - 2:
        k = n - m
        J = (1 << k) - 1
        pos = k + 1
    elif m == n:
        J = 0
        pos = 1
    else:
        raise ValueError(f"no D_{n} subset has label {label}")
    for part in lam:
        for i in range(pos, pos + part - 1):
            if i == 1:
                J |= 1 if label.sign == "-" else 2
            else:
                J |= 1 << i
        pos += part
    return J


def type_d_normalizer_index(label: DLabel, n: int) -> int:
    """a * prod(m_i! 2^{m_i}); a = 1/2 for labels of size n with an odd part."""
    lam = label.partition
    value = prod(factorial(c) * 2 ** c for c in Counter(lam).values())
    if sum(lam) == n and any(part % 2 for part in lam):
        value //= 2
    return value


def gamma(n: int) -> list:
    """All D_n labels."""
    out = [DLabel(lam) for lam in partitions_upto(n - 2)]
    for lam in partitions(n):
        if is_all_even(lam):
            out += [DLabel(lam, "+"), DLabel(lam, "-")]
        else:
            out.append(DLabel(lam))
    return out


def gamma_p(n: int, p: int) -> list:
    """Labels whose normalizer index is prime to p."""
    if p == 0:
        return gamma(n)
    return [lab for lab in gamma(n) if type_d_normalizer_index(lab, n) % p]


def format_partition(lam: Partition) -> str:
    return "(" + ",".join(str(x) for x in lam) + ")"


def label_sort_key(label):
    """Size descending, then partition descending, then + before -."""
    if isinstance(label, DLabel):
        lam, sign = label.partition, label.sign
    else:
        lam, sign = label, ""
    return (-sum(lam), tuple(-x for x in lam), {"": 0, "+": 0, "-": 1}[sign])


def members_string(J: int) -> str:
    return "{" + ",".join(str(i) for i in subset_members(J)) + "}"


def family_label(family: str, J: int, rank: int):
    if family == "B":
        return type_b_label(J, rank)
    if family == "D":
        return type_d_label(J, rank)
    raise WrongFamily(f"no partition labels for type {family}")
