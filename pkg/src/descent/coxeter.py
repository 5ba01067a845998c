"""
Finite Coxeter systems realized as permutations of their root sets.

Every element of W is stored as the array of images of all root indices.
Positive roots occupy indices ``0..N-1`` (simple roots first, in generator
order) and the negative of root ``r`` is ``r + N``.  Lengths and both descent
sets fall out of sign checks on these arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import BudgetExceeded, UnsupportedType

FAMILIES = ("A", "B", "D", "I", "E", "F", "H")

# group orders above this need ``allow_large``
DEFAULT_BUDGET = 100_000


@dataclass(frozen=True)
class CoxeterType:
    """Family letter plus rank.  For ``I`` the rank is 2 and ``m`` is the edge label."""

    family: str
    rank: int
    m: int | None = None

    def __post_init__(self):
        f, n = self.family, self.rank
        if f not in FAMILIES:
            raise UnsupportedType(f"unknown family {f!r}")
        ok = {
            "A": n >= 1,
            "B": n >= 2,
            "D": n >= 4,
            "I": n == 2 and self.m is not None and self.m >= 3,
            "E": n in (6, 7),
            "F": n == 4,
            "H": n in (3, 4),
        }[f]
        if not ok:
            raise UnsupportedType(f"{self.name} is not a supported finite type")

    @classmethod
    def parse(cls, family: str, rank: int) -> "CoxeterType":
        """``I`` takes the dihedral parameter in place of the rank."""
        family = family.upper()
        if family == "E" and rank == 8:
            raise UnsupportedType("E8 is out of scope")
        if family == "I":
            return cls("I", 2, rank)
        return cls(family, rank)

    @property
    def name(self) -> str:
        if self.family == "I":
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"

    @property
    def tag(self) -> str:
        """File-name friendly identifier."""
        if self.family == "I":
            return f"I{self.m}"
        return f"{self.family}{self.rank}"

    def order(self) -> int:
        """Closed-form group order."""
        f, n = self.family, self.rank
        if f == "A":
            return math.factorial(n + 1)
        if f == "B":
            return 2**n * math.factorial(n)
        if f == "D":
            return 2 ** (n - 1) * math.factorial(n)
        if f == "I":
            return 2 * self.m
        return {("E", 6): 51840, ("E", 7): 2903040, ("F", 4): 1152,
                ("H", 3): 120, ("H", 4): 14400}[(f, n)]


# --- exact arithmetic in Z[phi], phi^2 = phi + 1 ---------------------------

def _zphi_mul(x, y):
    a, b = x
    c, d = y
    return (a * c + b * d, a * d + b * c + b * d)


def _zphi_sign(x) -> int:
    """Sign of a + b*phi, decided exactly via 2a + b + b*sqrt(5)."""
    a, b = x
    u, v = 2 * a + b, b
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0:
        return (v > 0) - (v < 0)
    if (u > 0) == (v > 0):
        return 1 if u > 0 else -1
    # opposite signs: compare u^2 with 5 v^2
    if u * u > 5 * v * v:
        return 1 if u > 0 else -1
    return 1 if v > 0 else -1


def cartan_matrix(ctype: CoxeterType):
    """Entries (a, b) meaning a + b*phi, with s_i(alpha_j) = alpha_j - A[i][j] alpha_i."""
    f, n = ctype.family, ctype.rank
    A = [[(2, 0) if i == j else (0, 0) for j in range(n)] for i in range(n)]

    def edge(i, j, aij=(-1, 0), aji=(-1, 0)):
        A[i][j] = aij
        A[j][i] = aji

    if f == "A":
        for i in range(n - 1):
            edge(i, i + 1)
    elif f == "B":
        # s_0 is the sign change (short root), label 4 between s_0 and s_1
        edge(0, 1, (-2, 0), (-1, 0))
        for i in range(1, n - 1):
            edge(i, i + 1)
    elif f == "D":
        # 0 = u, 1 = t_1, both attached to t_2
        edge(0, 2)
        edge(1, 2)
        for i in range(2, n - 1):
            edge(i, i + 1)
    elif f == "E":
        for i, j in [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]:
            edge(i, j)
        if n == 7:
            edge(5, 6)
    elif f == "F":
        edge(0, 1)
        edge(1, 2, (-1, 0), (-2, 0))
        edge(2, 3)
    elif f == "H":
        edge(0, 1, (0, -1), (0, -1))
        for i in range(1, n - 1):
            edge(i, i + 1)
    else:
        raise UnsupportedType(f"no Cartan matrix for {ctype.name}")
    return A


def _root_system(ctype: CoxeterType):
    """Positive roots (coefficient tuples), simple reflection permutations, root supports."""
    A = cartan_matrix(ctype)
    n = ctype.rank
    zero = (0, 0)

    def reflect(i, beta):
        c = zero
        for j in range(n):
            t = _zphi_mul(A[i][j], beta[j])
            c = (c[0] + t[0], c[1] + t[1])
        out = list(beta)
        out[i] = (beta[i][0] - c[0], beta[i][1] - c[1])
        return tuple(out)

    simple = [tuple((1, 0) if k == i else zero for k in range(n)) for i in range(n)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            for i in range(n):
                g = reflect(i, beta)
                if g not in seen and _zphi_sign(next(c for c in g if c != zero)) > 0:
                    seen.add(g)
                    nxt.append(g)
        frontier = nxt

    def height(beta):
        return sum(c[0] + 1.618033988749895 * c[1] for c in beta)

    rest = sorted((b for b in seen if b not in simple), key=lambda b: (height(b), b))
    positive = simple + rest
    N = len(positive)
    index = {b: k for k, b in enumerate(positive)}
    for b, k in list(index.items()):
        index[tuple((-c[0], -c[1]) for c in b)] = k + N
    gens = np.empty((n, 2 * N), dtype=np.int64)
    for i in range(n):
        for k, b in enumerate(positive):
            img = index[reflect(i, b)]
            gens[i, k] = img
            gens[i, k + N] = (img + N) % (2 * N)
    supp = np.array([sum(1 << i for i, c in enumerate(b) if c != zero) for b in positive],
                    dtype=np.int64)
    return N, gens, supp


def _dihedral_roots(m: int):
    """Roots of I2(m) indexed by angle k*pi/m; positive ones are k = 0..m-1."""
    N = m
    gens = np.empty((2, 2 * N), dtype=np.int64)
    # alpha_1 at angle 0, alpha_2 at angle (m-1)pi/m; reflection ⟂ root a: k -> 2a + m - k
    for i, a in enumerate((0, m - 1)):
        for k in range(2 * N):
            gens[i, k] = (2 * a + m - k) % (2 * m)
    # reorder so the two simple roots sit at positions 0, 1
    pos_order = [0, m - 1] + [k for k in range(1, m - 1)]
    relabel = np.empty(2 * N, dtype=np.int64)
    for new, old in enumerate(pos_order):
        relabel[old] = new
        relabel[old + m] = new + N
    g2 = np.empty_like(gens)
    for i in range(2):
        g2[i, relabel] = relabel[gens[i]]
    supp = np.array([1, 2] + [3] * (m - 2), dtype=np.int64)
    return N, g2, supp


def subset_size(J: int) -> int:
    return bin(J).count("1")


def subset_members(J: int):
    i = 0
    out = []
    while J:
        if J & 1:
            out.append(i)
        J >>= 1
        i += 1
    return out


class CoxeterSystem:
    """
    A finite Coxeter group with every element enumerated.

    Elements are addressed by their index in ``perm`` (breadth-first by
    length, ties in lexicographic order of the root permutation), so index 0
    is the identity.
    """

    def __init__(self, ctype: CoxeterType, N: int, gens: np.ndarray, supp: np.ndarray,
                 perm: np.ndarray):
        self.ctype = ctype
        self.rank = ctype.rank
        self.N = N
        self.gens = gens
        self.root_support = supp
        self.perm = perm
        self.size = len(perm)
        self.full = (1 << self.rank) - 1
        self.nsubsets = 1 << self.rank
        pos_img = perm[:, : self.rank]
        self.right_descents = ((pos_img >= N) * (1 << np.arange(self.rank))).sum(axis=1)
        self.lengths = (perm[:, :N] >= N).sum(axis=1)
        self._keys = self._key(perm)
        self._key_order = np.argsort(self._keys)
        self._sorted_keys = self._keys[self._key_order]
        self.left_descents = self.right_descents[self.inverse_index]

    # -- element plumbing -------------------------------------------------

    def _key(self, perms: np.ndarray) -> np.ndarray:
        base = 2 * self.N
        k = np.zeros(len(perms), dtype=np.int64)
        for s in range(self.rank - 1, -1, -1):
            k = k * base + perms[:, s].astype(np.int64)
        return k

    def index_of(self, perms: np.ndarray) -> np.ndarray:
        """Element indices of root permutations (rows)."""
        perms = np.atleast_2d(perms)
        pos = np.searchsorted(self._sorted_keys, self._key(perms))
        return self._key_order[pos]

    @cached_property
    def inverse_index(self) -> np.ndarray:
        inv = np.argsort(self.perm, axis=1)
        return self.index_of(inv)

    def multiply(self, u: int, v: int) -> int:
        """Index of u*v (apply v first)."""
        return int(self.index_of(self.perm[u][self.perm[v]])[0])

    def multiply_many(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        pu = self.perm[u]
        pv = self.perm[v]
        return self.index_of(np.take_along_axis(pu, pv, axis=1))

    def inverse(self, w: int) -> int:
        return int(self.inverse_index[w])

    def generator(self, s: int) -> int:
        return int(self.index_of(self.gens[s])[0])

    def word(self, letters) -> int:
        """Index of s_{i1} s_{i2} ... for the given generator indices."""
        p = np.arange(2 * self.N)
        for s in letters:
            p = p[self.gens[s]]
        return int(self.index_of(p)[0])

    def order_of(self, w: int) -> int:
        p = self.perm[w]
        q = p.copy()
        k = 1
        ident = np.arange(2 * self.N)
        while not np.array_equal(q, ident):
            q = p[q]
            k += 1
        return k

    # -- cosets -------------------------------------------------------------

    @cached_property
    def _buckets(self) -> dict:
        key = self.left_descents * self.nsubsets + self.right_descents
        order = np.argsort(key, kind="stable")
        ks = key[order]
        cuts = np.flatnonzero(np.diff(ks)) + 1
        out = {}
        for chunk in np.split(order, cuts):
            k = int(key[chunk[0]])
            out[divmod(k, self.nsubsets)] = chunk
        return out

    def coset_reps(self, J: int) -> np.ndarray:
        """X_J: elements with no right descent in J."""
        return np.flatnonzero((self.right_descents & J) == 0)

    def double_coset_reps(self, J: int, K: int) -> np.ndarray:
        """X_J^{-1} ∩ X_K, gathered from the (left, right) descent buckets."""
        parts = [idx for (dl, dr), idx in self._buckets.items()
                 if not (dl & J) and not (dr & K)]
        if not parts:
            return np.empty(0, dtype=np.int64)
        return np.sort(np.concatenate(parts))

    def parabolic_order(self, J: int) -> int:
        """|W_J| by closing the generators of J under multiplication."""
        ident = np.arange(2 * self.N)
        seen = {ident.tobytes()}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for s in subset_members(J):
                    q = p[self.gens[s]]
                    b = q.tobytes()
                    if b not in seen:
                        seen.add(b)
                        nxt.append(q)
            frontier = nxt
        return len(seen)

    def coxeter_element(self, K: int) -> int:
        """Product of the generators of K in ascending index order."""
        return self.word(subset_members(K))

    def simple_root_images(self, w: int) -> np.ndarray:
        return self.perm[w, : self.rank]

    def conjugate_subset(self, J: int, w: int):
        """w^{-1} J w as a generator subset, or None if some conjugate is not simple."""
        winv = self.perm[self.inverse(w)]
        out = 0
        for s in subset_members(J):
            r = int(winv[s]) % self.N
            if r >= self.rank:
                return None
            out |= 1 << r
        return out

    def conjugate_intersect(self, J: int, w: int, K: int) -> int:
        """w^{-1} J w ∩ K: generators t in K whose root w(alpha_t) is ± a simple root in J."""
        img = self.perm[w]
        out = 0
        for t in subset_members(K):
            r = int(img[t]) % self.N
            if r < self.rank and (J >> r) & 1:
                out |= 1 << t
        return out

    def simple_image_table(self) -> np.ndarray:
        """T[w, t] = s if w(alpha_t) = ± alpha_s, else -1."""
        img = self.perm[:, : self.rank] % self.N
        return np.where(img < self.rank, img, -1)

    def support(self, elems: np.ndarray) -> np.ndarray:
        """Bitmask of generators occurring in reduced words (union of inversion supports)."""
        neg = self.perm[elems][:, : self.N] >= self.N
        out = np.zeros(len(elems), dtype=np.int64)
        for r in range(self.N):
            out |= np.where(neg[:, r], self.root_support[r], 0)
        return out

    def in_parabolic(self, elems: np.ndarray, J: int) -> np.ndarray:
        return (self.support(elems) & ~J) == 0

    def conjugates(self, x: int, elems: np.ndarray | None = None) -> np.ndarray:
        """w^{-1} x w for each w (all of W by default)."""
        if elems is None:
            elems = np.arange(self.size)
        winv = self.perm[self.inverse_index[elems]]
        px = self.perm[x]
        pw = self.perm[elems]
        # (w^{-1} x w)(r) = w^{-1}(x(w(r)))
        y = np.take_along_axis(winv, px[pw], axis=1)
        return self.index_of(y)

    def fixed_point_count(self, J: int, x: int) -> int:
        """Number of cosets w W_J fixed by x."""
        X = self.coset_reps(J)
        y = self.conjugates(x, X)
        return int(self.in_parabolic(y, J).sum())

    def fixed_point_profile(self, x: int) -> np.ndarray:
        """phi_J(x) for every subset J at once."""
        y = self.conjugates(x)
        supp = self.support(y)
        counts = np.zeros((self.nsubsets, self.nsubsets), dtype=np.int64)
        np.add.at(counts, (self.right_descents, supp), 1)
        out = np.zeros(self.nsubsets, dtype=np.int64)
        for J in range(self.nsubsets):
            dr = np.arange(self.nsubsets)
            ok_dr = (dr & J) == 0
            ok_sp = (dr & ~J) == 0
            out[J] = counts[np.ix_(ok_dr, ok_sp)].sum()
        return out

    # -- conjugacy ----------------------------------------------------------

    @cached_property
    def conjugacy_classes(self) -> np.ndarray:
        """Class label per element (0..k-1, numbered by first occurrence)."""
        rows, cols = [], []
        allw = np.arange(self.size)
        for s in range(self.rank):
            g = np.full(self.size, self.generator(s))
            rows.append(allw)
            cols.append(self.multiply_many(g, self.multiply_many(allw, g)))
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
        graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)),
                           shape=(self.size, self.size))
        _, labels = connected_components(graph, directed=False)
        _, first = np.unique(labels, return_index=True)
        relabel = np.empty(labels.max() + 1, dtype=np.int64)
        relabel[labels[np.sort(first)]] = np.arange(len(first))
        return relabel[labels]

    @cached_property
    def class_representatives(self) -> np.ndarray:
        _, first = np.unique(self.conjugacy_classes, return_index=True)
        return np.sort(first)

    def subsets_conjugate(self, J: int, K: int) -> bool:
        """True iff w^{-1} J w = K for some w, searched over X_{JK}."""
        if subset_size(J) != subset_size(K):
            return False
        if J == K:
            return True
        X = self.double_coset_reps(J, K)
        T = self.simple_image_table()[X]
        ok = np.ones(len(X), dtype=bool)
        for t in subset_members(K):
            col = T[:, t]
            ok &= (col >= 0) & ((J >> np.maximum(col, 0)) & 1).astype(bool)
        return bool(ok.any())


def build_coxeter_system(ctype: CoxeterType, allow_large: bool = False,
                         budget: int = DEFAULT_BUDGET) -> CoxeterSystem:
    """Enumerate W breadth-first by length."""
    if ctype.order() > budget and not allow_large:
        raise BudgetExceeded(f"|{ctype.name}| = {ctype.order()} exceeds the budget {budget}")
    if ctype.family == "I":
        N, gens, supp = _dihedral_roots(ctype.m)
    else:
        N, gens, supp = _root_system(ctype)
    dtype = np.uint8 if 2 * N <= 256 else np.uint16
    gens_small = gens.astype(dtype)
    n = ctype.rank
    base = 2 * N

    def keys(p):
        k = np.zeros(len(p), dtype=np.int64)
        for s in range(n - 1, -1, -1):
            k = k * base + p[:, s].astype(np.int64)
        return k

    level = np.arange(2 * N, dtype=dtype)[None, :]
    levels = [level]
    while True:
        cands = []
        for s in range(n):
            up = level[level[:, s] < N]
            if len(up):
                cands.append(up[:, gens_small[s]])
        if not cands:
            break
        c = np.concatenate(cands)
        _, first = np.unique(keys(c), return_index=True)
        c = c[first]
        c = c[np.lexsort(c.T[::-1])]
        levels.append(c)
        level = c
    perm = np.concatenate(levels)
    if len(perm) != ctype.order():
        raise AssertionError(f"enumerated {len(perm)} elements, expected {ctype.order()}")
    return CoxeterSystem(ctype, N, gens, supp, perm)
