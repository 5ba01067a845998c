"""
Descent algebras over the integers, the rationals and prime fields.

The basis element x_J is the sum of the minimal left coset representatives
of W_J.  Products are encoded by the integer tensor ``a[J, K, L]`` counting
the w in X_JK with w^{-1} J w ∩ K = L.

Field elements are plain vectors: ``int64`` residues when ``p > 0`` and object
arrays of ``Fraction`` when ``p == 0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import labels as lab
from .coxeter import CoxeterSystem, subset_size
from .errors import BasisExpansionFailed, FieldMismatch, RankMismatch
from .linalg import echelon_int, nullspace_mod, nullspace_q, rank_mod, rank_q, rref_mod

ORACLE_BUDGET = 50_000


# ------------------------------------------------------------ constants

class StructureConstants:
    """Dense tensor a[J, K, L] with a sparse view."""

    def __init__(self, rank: int, tensor: np.ndarray):
        self.rank = rank
        self.dim = 1 << rank
        self.tensor = np.asarray(tensor, dtype=np.int64)

    def terms(self, J: int, K: int) -> list:
        row = self.tensor[J, K]
        return [(int(L), int(row[L])) for L in np.flatnonzero(row)]

    def sparse(self) -> dict:
        return {(J, K): self.terms(J, K) for J in range(self.dim) for K in range(self.dim)}

    def __eq__(self, other) -> bool:
        return (isinstance(other, StructureConstants) and self.rank == other.rank
                and np.array_equal(self.tensor, other.tensor))

    def to_jsonl(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for J in range(self.dim):
                for K in range(self.dim):
                    fh.write(json.dumps({"J": J, "K": K, "terms": self.terms(J, K)}) + "\n")

    @classmethod
    def from_jsonl(cls, path) -> "StructureConstants":
        rows = []
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if line.strip():
                    rows.append(json.loads(line))
        dim = max(max(r["J"], r["K"]) for r in rows) + 1
        rank = dim.bit_length() - 1
        tensor = np.zeros((dim, dim, dim), dtype=np.int64)
        for r in rows:
            for L, c in r["terms"]:
                tensor[r["J"], r["K"], L] = c
        return cls(rank, tensor)


def compute_structure_constants(system: CoxeterSystem) -> StructureConstants:
    """
    Tally L = w^{-1} J w ∩ K over w in X_JK for every pair (J, K).

    For fixed J, every w with no left descent in J is binned by its right
    descent set and by the set of generators t with w(alpha_t) a simple root
    of J; each K then reads off its share of the histogram.
    """
    n = system.rank
    dim = 1 << n
    T = system.simple_image_table()
    onehot = np.where(T >= 0, np.left_shift(1, np.maximum(T, 0)), 0)
    weights = 1 << np.arange(n)
    dl, dr = system.left_descents, system.right_descents
    subsets = np.arange(dim)
    avoid = ((subsets[:, None] & subsets[None, :]) == 0).astype(np.int64)
    target = (subsets[:, None] * dim + (subsets[:, None] & subsets[None, :])).ravel()
    tensor = np.zeros((dim, dim, dim), dtype=np.int64)
    for J in range(dim):
        sel = (dl & J) == 0
        hit = ((onehot[sel] & J) != 0).astype(np.int64) @ weights
        hist = np.bincount(dr[sel] * dim + hit, minlength=dim * dim).reshape(dim, dim)
        per_k = avoid @ hist
        tensor[J] = np.bincount(target, weights=per_k.ravel(),
                                minlength=dim * dim).astype(np.int64).reshape(dim, dim)
    return StructureConstants(n, tensor)


# ------------------------------------------------------------ oracle

def _descent_mobius(system: CoxeterSystem, counts: np.ndarray) -> np.ndarray:
    """Coefficients c_L with sum_w counts[w] w = sum_L c_L x_L, or raise."""
    dim = system.nsubsets
    full = system.full
    g = np.zeros(dim, dtype=np.int64)
    seen = np.zeros(dim, dtype=bool)
    for d in range(dim):
        vals = counts[system.right_descents == d]
        if len(vals) == 0:
            continue
        if np.any(vals != vals[0]):
            raise BasisExpansionFailed(f"coefficient not constant on descent class {d}")
        g[full & ~d] = vals[0]
        seen[full & ~d] = True
    if not seen.all():
        raise BasisExpansionFailed("some descent class is empty")
    c = np.zeros(dim, dtype=np.int64)
    for L in range(dim):
        M = L
        while True:
            c[L] += (-1) ** (subset_size(L) - subset_size(M)) * g[M]
            if M == 0:
                break
            M = (M - 1) & L
    check = np.array([c[[L for L in range(dim) if not (L & d)]].sum() for d in range(dim)])
    present = np.unique(system.right_descents)
    for d in present:
        if check[d] != counts[np.flatnonzero(system.right_descents == d)[0]]:
            raise BasisExpansionFailed(f"expansion mismatch on descent class {d}")
    return c


def group_algebra_product(system: CoxeterSystem, J: int, K: int,
                          budget: int = ORACLE_BUDGET, chunk: int = 1 << 20) -> np.ndarray:
    """x_J * x_K computed inside the group algebra, expanded back in the x_L basis."""
    if system.size > budget:
        raise BasisExpansionFailed(f"|W| = {system.size} is above the oracle budget {budget}")
    XJ = system.coset_reps(J)
    XK = system.coset_reps(K)
    counts = np.zeros(system.size, dtype=np.int64)
    step = max(1, chunk // max(1, len(XK)))
    for start in range(0, len(XJ), step):
        u = np.repeat(XJ[start:start + step], len(XK))
        v = np.tile(XK, min(step, len(XJ) - start))
        counts += np.bincount(system.multiply_many(u, v), minlength=system.size)
    return _descent_mobius(system, counts)


def oracle_structure_constants(system: CoxeterSystem, budget: int = ORACLE_BUDGET) -> StructureConstants:
    dim = system.nsubsets
    tensor = np.zeros((dim, dim, dim), dtype=np.int64)
    for J in range(dim):
        for K in range(dim):
            tensor[J, K] = group_algebra_product(system, J, K, budget)
    return StructureConstants(system.rank, tensor)


# ------------------------------------------------------------ field vectors

def _as_integers(u: np.ndarray):
    """(integer numerators, common denominator) of a Fraction vector."""
    den = 1
    for x in u:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = den * x.denominator // np.gcd(den, x.denominator)
    num = np.array([int(Fraction(x) * den) for x in u], dtype=object)
    return num, den


def _from_integers(num: np.ndarray, den: int) -> np.ndarray:
    return np.array([Fraction(int(x), den) for x in num], dtype=object)


def _bilinear(u: np.ndarray, v: np.ndarray, tensor: np.ndarray) -> np.ndarray:
    iu = np.flatnonzero(u)
    iv = np.flatnonzero(v)
    if len(iu) == 0 or len(iv) == 0:
        return np.zeros(tensor.shape[2], dtype=u.dtype)
    block = tensor[np.ix_(iu, iv)]
    left = np.tensordot(u[iu], block, axes=(0, 0))
    return np.tensordot(v[iv], left, axes=(0, 0))


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """Coefficient vector in the x_J basis over the field of characteristic p."""

    coeffs: np.ndarray
    p: int

    def __eq__(self, other) -> bool:
        return (isinstance(other, AlgebraElement) and self.p == other.p
                and len(self.coeffs) == len(other.coeffs)
                and all(x == y for x, y in zip(self.coeffs, other.coeffs)))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_field(self, other)
        c = self.coeffs + other.coeffs
        return AlgebraElement(c % self.p if self.p else c, self.p)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same_field(self, other)
        c = self.coeffs - other.coeffs
        return AlgebraElement(c % self.p if self.p else c, self.p)


def _same_field(a: AlgebraElement, b: AlgebraElement) -> None:
    if a.p != b.p:
        raise FieldMismatch(f"characteristic {a.p} vs {b.p}")
    if len(a.coeffs) != len(b.coeffs):
        raise FieldMismatch(f"dimension {len(a.coeffs)} vs {len(b.coeffs)}")


def multiply(a: AlgebraElement, b: AlgebraElement, sc: StructureConstants) -> AlgebraElement:
    _same_field(a, b)
    if len(a.coeffs) != sc.dim:
        raise FieldMismatch(f"elements of dimension {len(a.coeffs)} with an algebra of dimension {sc.dim}")
    return AlgebraElement(field_product(a.coeffs, b.coeffs, sc.tensor, a.p), a.p)


def field_product(u: np.ndarray, v: np.ndarray, tensor: np.ndarray, p: int) -> np.ndarray:
    if p:
        return _bilinear(np.asarray(u, dtype=np.int64) % p, np.asarray(v, dtype=np.int64) % p,
                         tensor % p) % p
    nu, du = _as_integers(u)
    nv, dv = _as_integers(v)
    return _from_integers(_bilinear(nu, nv, tensor.astype(object)), du * dv)


# ------------------------------------------------------------ the algebra

class DescentAlgebra:
    """
    The descent algebra of a Coxeter system together with its subset classes.

    ``reps`` lists one subset per conjugacy class, ordered by size, then by
    the family's label order (types B and D), then by bitmask; ``marks`` holds
    beta_JK = a_JKK for every subset J and every representative K.
    """

    def __init__(self, system: CoxeterSystem, constants: StructureConstants | None = None):
        self.system = system
        self.family = system.ctype.family
        self.rank = system.rank
        self.dim = system.nsubsets
        self.sc = constants if constants is not None else compute_structure_constants(system)
        self.tensor = self.sc.tensor
        self._reduced = {}
        self._classify_subsets()

    # -- subsets --------------------------------------------------------

    def _classify_subsets(self) -> None:
        dim = self.dim
        parent = list(range(dim))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for J in range(dim):
            for K in range(J + 1, dim):
                if subset_size(J) == subset_size(K) and self.tensor[J, K, K] > 0:
                    parent[find(K)] = find(J)
        groups = {}
        for J in range(dim):
            groups.setdefault(find(J), []).append(J)
        classes = [tuple(g) for g in groups.values()]
        reps = [self._representative(c) for c in classes]
        order = sorted(range(len(classes)), key=lambda i: self._order_key(reps[i]))
        self.classes = [classes[i] for i in order]
        self.reps = [reps[i] for i in order]
        self.class_index = np.empty(dim, dtype=np.int64)
        for i, c in enumerate(self.classes):
            self.class_index[list(c)] = i
        self.marks = self.tensor[:, self.reps, self.reps]

    def _representative(self, members) -> int:
        if self.family == "B":
            return lab.type_b_representative(lab.type_b_label(members[0], self.rank), self.rank)
        if self.family == "D":
            return lab.type_d_representative(lab.type_d_label(members[0], self.rank), self.rank)
        return min(members)

    def _order_key(self, J: int):
        if self.family in ("B", "D"):
            return (subset_size(J), lab.label_sort_key(self.label(J)), J)
        return (subset_size(J), J)

    def label(self, J: int):
        """Partition label (types B and D) or the subset itself."""
        if self.family in ("B", "D"):
            return lab.family_label(self.family, J, self.rank)
        return J

    def display(self, J: int) -> str:
        if self.family == "B":
            return lab.format_partition(self.label(J))
        if self.family == "D":
            return str(self.label(J))
        return lab.members_string(J)

    def rep_of(self, J: int) -> int:
        return self.reps[self.class_index[J]]

    def marks_table(self) -> np.ndarray:
        """beta over representatives (rows J, columns K)."""
        return self.marks[self.reps]

    def normalizer_index(self, J: int) -> int:
        """[N_W(W_J) : W_J] = beta_JJ."""
        return int(self.tensor[J, J, J])

    def simple_reps(self, p: int) -> list:
        """Representatives K with p not dividing beta_KK."""
        return [K for K in self.reps if p == 0 or self.normalizer_index(K) % p]

    # -- arithmetic -----------------------------------------------------

    def reduced_tensor(self, p: int) -> np.ndarray:
        if p == 0:
            return self.tensor
        if p not in self._reduced:
            self._reduced[p] = self.tensor % p
        return self._reduced[p]

    @cached_property
    def tensor_object(self) -> np.ndarray:
        return self.tensor.astype(object)

    def zero(self, p: int) -> np.ndarray:
        if p:
            return np.zeros(self.dim, dtype=np.int64)
        return np.array([Fraction(0)] * self.dim, dtype=object)

    def basis_vector(self, J: int, p: int) -> np.ndarray:
        v = self.zero(p)
        v[J] = 1 if p else Fraction(1)
        return v

    def one(self, p: int) -> np.ndarray:
        return self.basis_vector(self.system.full, p)

    def element(self, coeffs, p: int) -> AlgebraElement:
        c = np.asarray(coeffs)
        if p:
            return AlgebraElement(c.astype(np.int64) % p, p)
        return AlgebraElement(np.array([Fraction(x) for x in c], dtype=object), 0)

    def mul(self, u: np.ndarray, v: np.ndarray, p: int) -> np.ndarray:
        if p:
            return _bilinear(u, v, self.reduced_tensor(p)) % p
        nu, du = _as_integers(u)
        nv, dv = _as_integers(v)
        return _from_integers(_bilinear(nu, nv, self.tensor_object), du * dv)

    def left_matrix(self, e: np.ndarray, p: int) -> np.ndarray:
        """M[K, L] = coefficient of x_L in e * x_K."""
        T = self.reduced_tensor(p)
        nz = np.flatnonzero(e)
        if p:
            return np.tensordot(e[nz], T[nz], axes=(0, 0)) % p
        return np.tensordot(e[nz], self.tensor_object[nz], axes=(0, 0))

    def right_matrix(self, e: np.ndarray, p: int) -> np.ndarray:
        """M[K, L] = coefficient of x_L in x_K * e."""
        T = self.reduced_tensor(p)
        nz = np.flatnonzero(e)
        if p:
            return np.tensordot(e[nz], T[:, nz].transpose(1, 0, 2), axes=(0, 0)) % p
        return np.tensordot(e[nz], self.tensor_object[:, nz].transpose(1, 0, 2), axes=(0, 0))

    # -- characters and the radical -------------------------------------

    def evaluate_marks(self, u: np.ndarray, p: int) -> np.ndarray:
        """theta(u)(c_K) for every representative K."""
        if p:
            return (np.asarray(u, dtype=np.int64) @ (self.marks % p)) % p
        return np.asarray(u, dtype=object) @ self.marks.astype(object)

    @cached_property
    def character_table(self) -> np.ndarray:
        """phi_J(g) for every subset J (rows) and every conjugacy class g of W (columns)."""
        reps = self.system.class_representatives
        return np.stack([self.system.fixed_point_profile(int(g)) for g in reps], axis=1)

    def theta_character(self, u: np.ndarray, p: int = 0) -> np.ndarray:
        """Class function sum_J u_J phi_J on the conjugacy classes of W."""
        if p:
            return (np.asarray(u, dtype=np.int64) @ (self.character_table % p)) % p
        return np.asarray(u, dtype=object) @ self.character_table.astype(object)

    def radical_basis(self, p: int) -> np.ndarray:
        """
        Differences x_J - x_K inside each class, plus the representative
        itself whenever p divides its normalizer index.  Returned as integer
        rows; cross-checked against the kernel of the marks.
        """
        rows = []
        for rep, members in zip(self.reps, self.classes):
            for J in members:
                if J != rep:
                    v = np.zeros(self.dim, dtype=np.int64)
                    v[J], v[rep] = 1, -1
                    rows.append(v)
            if p and self.normalizer_index(rep) % p == 0:
                v = np.zeros(self.dim, dtype=np.int64)
                v[rep] = 1
                rows.append(v)
        basis = np.array(rows, dtype=np.int64).reshape(len(rows), self.dim)
        self._check_radical(basis, p)
        return basis

    def _check_radical(self, basis: np.ndarray, p: int) -> None:
        simples = len(self.simple_reps(p))
        if p:
            r = rank_mod(basis, p) if len(basis) else 0
            kernel = nullspace_mod(self.marks.T % p, p)
            lam = self.marks.T % p
            inside = not len(basis) or not np.any((basis @ self.marks) % p)
            rk = rank_mod(lam, p)
        else:
            r = rank_q(basis) if len(basis) else 0
            kernel = nullspace_q(self.marks.T)
            inside = not len(basis) or not np.any(basis @ self.marks)
            rk = rank_q(self.marks)
        if r != len(basis) or r != len(kernel) or not inside or self.dim - r != simples or rk != simples:
            raise RankMismatch(
                f"radical rank {r} from classes, kernel {len(kernel)}, simples {simples}, marks rank {rk}")


# ------------------------------------------------------------ surjections

def surjection_b(u: np.ndarray, rank_from: int) -> np.ndarray:
    """B_{n+1} -> B_n: x_K goes to x_{(K minus 0) - 1} when 0 is in K, else to 0."""
    out = np.zeros(1 << (rank_from - 1), dtype=u.dtype)
    if u.dtype == object:
        out[:] = 0
    for K in np.flatnonzero(u):
        if K & 1:
            out[K >> 1] += u[K]
    return out


def surjection_d(u: np.ndarray, rank_from: int) -> np.ndarray:
    """D_n -> B_{n-2}: x_K goes to x_{(K minus {0,1}) - 2} when 0, 1 are in K, else to 0."""
    out = np.zeros(1 << (rank_from - 2), dtype=u.dtype)
    if u.dtype == object:
        out[:] = 0
    for K in np.flatnonzero(u):
        if K & 3 == 3:
            out[K >> 2] += u[K]
    return out


def radical_power_span(alg: DescentAlgebra, rows: np.ndarray, radical: np.ndarray, p: int) -> np.ndarray:
    """Row basis of span{r * s : r in rows, s in radical} (integers, or residues mod p)."""
    if len(rows) == 0 or len(radical) == 0:
        return np.zeros((0, alg.dim), dtype=np.int64)
    if p:
        T = alg.reduced_tensor(p)
        left = np.tensordot(np.asarray(rows, dtype=np.int64) % p, T, axes=(1, 0)) % p
        prods = np.einsum("kml,jm->kjl", left, np.asarray(radical, dtype=np.int64) % p) % p
        return rref_mod(prods.reshape(-1, alg.dim), p)[0]
    bound = (int(np.max(np.abs(rows))) * int(np.max(np.abs(radical)))
             * int(alg.tensor.max()) * alg.dim * alg.dim)
    if bound < 2 ** 62:
        rows_i = np.asarray(rows, dtype=np.int64)
        left = np.tensordot(rows_i, alg.tensor, axes=(1, 0))
        prods = np.einsum("kml,jm->kjl", left, np.asarray(radical, dtype=np.int64))
    else:
        left = np.tensordot(np.asarray(rows, dtype=object), alg.tensor_object, axes=(1, 0))
        prods = np.einsum("kml,jm->kjl", left, np.asarray(radical, dtype=object))
    return echelon_int(prods.reshape(-1, alg.dim))[0]
