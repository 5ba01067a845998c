"""
Modular representation theory of a descent algebra over one field.

Simple modules are one-dimensional and indexed by the representatives K
with p not dividing beta_KK; x_J acts on the simple for K by beta_JK.
Primitive idempotents are lifted from A/Rad, and the Cartan matrix and the
Ext-quiver are read from the spaces e_j A e_i, e_j Rad e_i and e_j Rad^2 e_i.

Conventions: ``cartan[i, j] = dim e_j A e_i`` (row i is the projective
cover of simple i) and ``quiver.arrows[i, j] = dim e_j Rad e_i / e_j Rad^2 e_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np

from .algebra import DescentAlgebra, _as_integers, radical_power_span
from .errors import LiftDivergence, NoTarget, RouteDisagreement
from .linalg import rank_mod, rref_mod, rref_q
from .quivers import Quiver


@dataclass(frozen=True)
class SimpleLabel:
    rep: int
    display: str
    column: tuple


def simple_labels(alg: DescentAlgebra, p: int) -> list:
    out = []
    for K in alg.simple_reps(p):
        col = alg.marks[:, alg.reps.index(K)]
        out.append(SimpleLabel(K, alg.display(K), tuple(int(x) % p if p else int(x) for x in col)))
    return out


def decomposition_matrix(alg: DescentAlgebra, p: int) -> np.ndarray:
    """
    d[J, K] = 1 iff beta_LJ = beta_LK mod p for every subset L (rows J over
    all representatives, columns K over the p-simple representatives).
    """
    cols = alg.marks % p if p else alg.marks
    simple = alg.simple_reps(p)
    sidx = [alg.reps.index(K) for K in simple]
    D = np.zeros((len(alg.reps), len(simple)), dtype=np.int64)
    for r in range(len(alg.reps)):
        hits = [c for c, s in enumerate(sidx) if np.array_equal(cols[:, r], cols[:, s])]
        if not hits:
            raise NoTarget(f"{alg.display(alg.reps[r])} reduces to no simple at p = {p}")
        if len(hits) > 1:
            raise RouteDisagreement(f"{alg.display(alg.reps[r])} reduces to several simples at p = {p}")
        D[r, hits[0]] = 1
    return D


# ------------------------------------------------------------ idempotents

@dataclass
class IdempotentSet:
    p: int
    reps: list
    idempotents: list = field(default_factory=list)


def _invert(M: np.ndarray, p: int):
    n = len(M)
    if p:
        aug = np.concatenate([np.asarray(M, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
        R, piv = rref_mod(aug, p)
        if piv[:n] != list(range(n)) or len(piv) != n:
            raise RouteDisagreement("marks block is singular mod p")
        return R[:, n:]
    aug = np.concatenate([np.asarray(M, dtype=object), np.eye(n, dtype=np.int64).astype(object)], axis=1)
    R, piv = rref_q(aug)
    if piv != list(range(n)):
        raise RouteDisagreement("marks block is singular")
    return R[:, n:]


def _equal(u, v) -> bool:
    return all(x == y for x, y in zip(u, v))


def _lift(alg: DescentAlgebra, e: np.ndarray, p: int, max_steps: int) -> np.ndarray:
    """Iterate e -> 3e^2 - 2e^3 until idempotent."""
    for _ in range(max_steps):
        e2 = alg.mul(e, e, p)
        if _equal(e2, e):
            return e
        e3 = alg.mul(e2, e, p)
        e = 3 * e2 - 2 * e3
        if p:
            e %= p
    if _equal(alg.mul(e, e, p), e):
        return e
    raise LiftDivergence(f"idempotent did not stabilise after {max_steps} steps")


def lift_idempotents(alg: DescentAlgebra, p: int) -> IdempotentSet:
    """Complete set of primitive orthogonal idempotents, one per p-simple, in representative order."""
    reps = alg.simple_reps(p)
    ridx = [alg.reps.index(K) for K in reps]
    block = alg.marks[np.ix_(reps, ridx)]  # rows J in reps, columns K in reps
    inv = _invert(block, p)  # inv @ block = 1: row i gives e_i's coefficients
    steps = 2 * max(1, alg.dim.bit_length()) + 2
    one = alg.one(p)
    total = alg.zero(p)
    out = []
    for i in range(len(reps)):
        e = alg.zero(p)
        for c, J in enumerate(reps):
            e[J] = inv[i, c]
        if i == len(reps) - 1:
            f = one - total
            if p:
                f %= p
        else:
            e = _lift(alg, e, p, steps)
            comp = one - total
            if p:
                comp %= p
            f = alg.mul(alg.mul(comp, e, p), comp, p)
            f = _lift(alg, f, p, steps)
        out.append(f)
        total = total + f
        if p:
            total %= p
    idem = IdempotentSet(p, reps, out)
    certify_idempotents(alg, idem)
    return idem


def certify_idempotents(alg: DescentAlgebra, idem: IdempotentSet) -> None:
    p = idem.p
    es = idem.idempotents
    zero = alg.zero(p)
    total = alg.zero(p)
    for i, e in enumerate(es):
        for j, f in enumerate(es):
            prod = alg.mul(e, f, p)
            want = e if i == j else zero
            if not _equal(prod, want):
                raise LiftDivergence(f"idempotents {i}, {j} are not orthogonal idempotents")
        total = total + e
        if p:
            total %= p
        values = alg.evaluate_marks(e, p)
        pos = [alg.reps.index(K) for K in idem.reps]
        vals = [values[k] for k in pos]
        if any(v != (1 if k == i else 0) for k, v in enumerate(vals)):
            raise LiftDivergence(f"idempotent {i} is not primitive for its simple")
    if not _equal(total, alg.one(p)):
        raise LiftDivergence("idempotents do not sum to 1")


# ------------------------------------------------------------ pipeline

def _rational_trace_form(alg: DescentAlgebra, basis_int: np.ndarray):
    """
    Bilinear form T with dim e_j V e_i = e_j^T T e_i, for V the two-sided
    ideal spanned by the given integer rows (V = A when basis is None).
    Returned as (integer numerators, denominator).
    """
    a = alg.tensor
    if basis_int is None:
        return np.einsum("jkn,nmk->jm", a, a).astype(object), 1
    if len(basis_int) == 0:
        return np.zeros((alg.dim, alg.dim), dtype=object), 1
    R, piv = rref_q(basis_int)
    rows, dens = [], []
    for r, pv in zip(R, piv):
        d = lcm(*[x.denominator for x in r])
        rows.append([int(x * d) for x in r])
        dens.append(int(r[pv] * d))
    B = np.array(rows, dtype=object)
    big = lcm(*dens)
    scale = np.array([big // d for d in dens], dtype=object)
    bound = int(np.max(np.abs(B))) * int(a.max()) ** 2 * alg.dim ** 2 * int(scale.max())
    if bound < 2 ** 62:
        Bi = B.astype(np.int64)
        Y = np.einsum("kl,jln->jkn", Bi, a)
        Z = np.einsum("jkn,nmk->jm", Y * scale.astype(np.int64)[None, :, None], a[:, :, piv])
        return Z.astype(object), big
    Y = np.einsum("kl,jln->jkn", B, a.astype(object))
    Z = np.einsum("jkn,nmk->jm", Y * scale[None, :, None], a[:, :, piv].astype(object))
    return Z, big


def _form_value(T, den, ej, ei) -> Fraction:
    nj, dj = _as_integers(ej)
    ni, di = _as_integers(ei)
    return Fraction(int(nj @ T @ ni), den * dj * di)


class FieldAnalysis:
    """All representation-theoretic data of one descent algebra over one field."""

    def __init__(self, alg: DescentAlgebra, p: int):
        self.alg = alg
        self.p = p
        self.simples = simple_labels(alg, p)
        self.reps = [s.rep for s in self.simples]
        self.labels = [s.display for s in self.simples]

    @cached_property
    def radical(self) -> np.ndarray:
        return self.alg.radical_basis(self.p)

    def radical_power(self, j: int) -> np.ndarray:
        return self.radical_series[j - 1] if j - 1 < len(self.radical_series) else self.radical_series[-1]

    @cached_property
    def radical_series(self) -> list:
        """[Rad, Rad^2, ..., 0] as row bases."""
        series = [self.radical]
        while len(series[-1]):
            series.append(radical_power_span(self.alg, series[-1], self.radical, self.p))
            if len(series) > self.alg.dim + 2:
                raise RouteDisagreement("radical is not nilpotent")
        return series

    @cached_property
    def loewy_dimensions(self) -> list:
        """dim Rad^k / Rad^{k+1} for k = 0, 1, ... (Loewy layers of the regular module)."""
        dims = [self.alg.dim] + [len(b) for b in self.radical_series]
        return [dims[k] - dims[k + 1] for k in range(len(dims) - 1)]

    @cached_property
    def idempotents(self) -> IdempotentSet:
        return lift_idempotents(self.alg, self.p)

    @cached_property
    def decomposition(self) -> np.ndarray:
        return decomposition_matrix(self.alg, self.p)

    @cached_property
    def _dims(self):
        """(cartan, dim e_j Rad^2 e_i) matrices indexed [i, j]."""
        n = len(self.reps)
        es = self.idempotents.idempotents
        cartan = np.zeros((n, n), dtype=np.int64)
        rad2 = np.zeros((n, n), dtype=np.int64)
        rad1 = np.zeros((n, n), dtype=np.int64)
        R2 = self.radical_power(2) if len(self.radical) else self.radical
        if self.p:
            p = self.p
            rights = [self.alg.right_matrix(e, p) for e in es]
            lefts = [self.alg.left_matrix(e, p) for e in es]
            for i in range(n):
                for j in range(n):
                    phi = (rights[i] @ lefts[j]) % p
                    cartan[i, j] = rank_mod(phi, p)
                    rad1[i, j] = rank_mod((self.radical @ phi) % p, p) if len(self.radical) else 0
                    rad2[i, j] = rank_mod((R2 @ phi) % p, p) if len(R2) else 0
        else:
            TA, dA = _rational_trace_form(self.alg, None)
            T2, d2 = _rational_trace_form(self.alg, R2)
            for i in range(n):
                for j in range(n):
                    c = _form_value(TA, dA, es[j], es[i])
                    r2 = _form_value(T2, d2, es[j], es[i])
                    if c.denominator != 1 or r2.denominator != 1:
                        raise RouteDisagreement("non-integral trace")
                    cartan[i, j] = int(c)
                    rad2[i, j] = int(r2)
                    rad1[i, j] = cartan[i, j] - (1 if i == j else 0)
        return cartan, rad1, rad2

    @property
    def cartan(self) -> np.ndarray:
        return self._dims[0]

    @cached_property
    def quiver(self) -> Quiver:
        _, rad1, rad2 = self._dims
        arrows = rad1 - rad2
        q = Quiver(list(self.labels), arrows, {"p": self.p, "type": self.alg.system.ctype.name})
        expected = len(self.radical) - len(self.radical_power(2)) if len(self.radical) else 0
        if q.arrow_count != expected:
            raise RouteDisagreement(f"{q.arrow_count} arrows but dim Rad/Rad^2 = {expected}")
        return q

    @cached_property
    def rad_squared_zero(self) -> bool:
        return len(self.radical) == 0 or len(self.radical_power(2)) == 0


def cartan_matrix(alg: DescentAlgebra, p: int) -> np.ndarray:
    return FieldAnalysis(alg, p).cartan


def ext_quiver(alg: DescentAlgebra, p: int) -> Quiver:
    return FieldAnalysis(alg, p).quiver


def marks_table(alg: DescentAlgebra, check: bool = True) -> np.ndarray:
    """beta_JK over representatives; optionally re-derived as fixed points of Coxeter elements."""
    M = alg.marks_table()
    if check:
        W = alg.system
        for c, K in enumerate(alg.reps):
            prof = W.fixed_point_profile(W.coxeter_element(K))
            if not np.array_equal(prof[alg.reps], M[:, c]):
                raise RouteDisagreement(f"marks column {alg.display(K)} disagrees with fixed points")
    return M


def cartan_identity(char0: FieldAnalysis, charp: FieldAnalysis) -> bool:
    """Ctilde == D^T C D with both sides computed independently."""
    D = charp.decomposition
    return np.array_equal(charp.cartan, D.T @ char0.cartan @ D)
