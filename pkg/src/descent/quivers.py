"""
Quivers as arrow-multiplicity matrices, and the graph theory used to decide
representation type: separated quivers, recognition of Dynkin and extended
Dynkin multigraphs, path counting and directed-multigraph isomorphism.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations
from math import factorial

import numpy as np

from .errors import HypothesisViolated
from .labels import format_partition, partitions_upto

INFINITE = float("inf")


@dataclass
class Quiver:
    """Directed multigraph: ``arrows[i, j]`` arrows from vertex i to vertex j (loops allowed)."""

    labels: list
    arrows: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.arrows = np.asarray(self.arrows, dtype=np.int64)
        if self.arrows.shape != (len(self.labels), len(self.labels)):
            raise ValueError("arrow matrix does not match the vertex list")
        if np.any(self.arrows < 0):
            raise ValueError("negative arrow multiplicity")

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def arrow_count(self) -> int:
        return int(self.arrows.sum())

    @property
    def loop_count(self) -> int:
        return int(np.trace(self.arrows))

    def triples(self) -> list:
        """(a, b, c) with 1-based vertices: c arrows from a to b."""
        n = self.vertex_count
        return [(i + 1, j + 1, int(self.arrows[i, j]))
                for i in range(n) for j in range(n) if self.arrows[i, j]]

    def to_magma(self) -> str:
        return "".join(f"<{a}, {b}, {c}>\n" for a, b, c in self.triples())

    def to_json(self) -> str:
        arrows = [{"from": self.labels[a - 1], "to": self.labels[b - 1], "mult": c}
                  for a, b, c in self.triples()]
        return json.dumps({"vertices": list(self.labels), "arrows": arrows}, indent=1)

    def reversed(self) -> "Quiver":
        return Quiver(list(self.labels), self.arrows.T.copy(), dict(self.meta))

    @classmethod
    def from_triples(cls, nvertices: int, triples, labels=None) -> "Quiver":
        m = np.zeros((nvertices, nvertices), dtype=np.int64)
        for a, b, c in triples:
            if not (1 <= a <= nvertices and 1 <= b <= nvertices) or c <= 0:
                raise ValueError(f"bad triple <{a}, {b}, {c}>")
            m[a - 1, b - 1] += c
        return cls(labels or [str(i + 1) for i in range(nvertices)], m)

    def induced(self, vertices) -> "Quiver":
        idx = list(vertices)
        return Quiver([self.labels[i] for i in idx], self.arrows[np.ix_(idx, idx)])


# ------------------------------------------------------------ separated quiver

def separated_quiver(q: Quiver) -> Quiver:
    """Bipartite doubling: an arrow i -> j becomes i -> j'.  Originals first, then primed copies."""
    n = q.vertex_count
    m = np.zeros((2 * n, 2 * n), dtype=np.int64)
    m[:n, n:] = q.arrows
    labels = list(q.labels) + [f"{x}'" for x in q.labels]
    return Quiver(labels, m)


def underlying_graph(arrows: np.ndarray) -> np.ndarray:
    """Symmetric edge-multiplicity matrix; the diagonal counts loops."""
    a = np.asarray(arrows, dtype=np.int64)
    g = a + a.T
    np.fill_diagonal(g, np.diag(a))
    return g


def components(graph: np.ndarray) -> list:
    n = len(graph)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            v = stack.pop()
            comp.append(v)
            for w in np.flatnonzero(graph[v]):
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
        out.append(sorted(comp))
    return out


# ------------------------------------------------------------ recognition

def _tree_arms(adj: dict, centre: int) -> list:
    """Lengths of the paths leaving a branch vertex (vertices excluding the centre)."""
    arms = []
    for start in adj[centre]:
        length, prev, cur = 1, centre, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            if len(nxt) > 1:
                return []
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    return sorted(arms)


def classify_graph(graph: np.ndarray) -> str:
    """
    Class of a connected undirected multigraph: "A4", "D5", "E6", "At2"
    (extended A), "Dt4", "Et7", ... or "Other".
    """
    g = np.asarray(graph, dtype=np.int64)
    n = len(g)
    if np.any(np.diag(g)):
        return "Other"
    off = g.copy()
    if np.any(off > 2):
        return "Other"
    if np.any(off == 2):
        return "At1" if n == 2 else "Other"
    edges = int(off.sum()) // 2
    deg = off.sum(axis=1)
    adj = {v: [int(w) for w in np.flatnonzero(off[v])] for v in range(n)}
    if edges == n:
        return f"At{n - 1}" if np.all(deg == 2) else "Other"
    if edges != n - 1:
        return "Other"
    if deg.max(initial=0) <= 2:
        return f"A{n}"
    branch = [v for v in range(n) if deg[v] >= 3]
    if len(branch) == 2:
        if all(deg[v] == 3 for v in branch) and sum(deg == 1) == 4:
            leaves_ok = all(sum(deg[w] == 1 for w in adj[v]) == 2 for v in branch)
            if leaves_ok and n >= 6:
                return f"Dt{n - 1}"
        return "Other"
    if len(branch) != 1:
        return "Other"
    c = branch[0]
    arms = _tree_arms(adj, c)
    if not arms:
        return "Other"
    if deg[c] == 4:
        return "Dt4" if arms == [1, 1, 1, 1] else "Other"
    if deg[c] != 3:
        return "Other"
    a, b, d = arms
    if a == 1 and b == 1:
        return f"D{n}"
    if a == 1 and b == 2:
        if d in (2, 3, 4):
            return f"E{n}"
        if d == 5:
            return "Et8"
        return "Other"
    if (a, b, d) == (1, 3, 3):
        return "Et7"
    if (a, b, d) == (2, 2, 2):
        return "Et6"
    return "Other"


def is_dynkin(cls: str) -> bool:
    return cls[0] in "ADE" and not cls.startswith(("At", "Dt", "Et"))


def is_extended(cls: str) -> bool:
    return cls.startswith(("At", "Dt", "Et"))


def classify_components(graph: np.ndarray) -> list:
    g = np.asarray(graph, dtype=np.int64)
    return [classify_graph(g[np.ix_(c, c)]) for c in components(g)]


# ------------------------------------------------------------ paths

def path_count(q: Quiver):
    """Number of paths including the trivial ones; INFINITE when there is an oriented cycle."""
    a = q.arrows
    n = q.vertex_count
    indeg = (a > 0).sum(axis=0) - (np.diag(a) > 0)
    if np.trace(a):
        return INFINITE
    order, queue = [], [v for v in range(n) if indeg[v] == 0]
    indeg = indeg.copy()
    while queue:
        v = queue.pop()
        order.append(v)
        for w in np.flatnonzero(a[v]):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(int(w))
    if len(order) < n:
        return INFINITE
    ending = np.ones(n, dtype=object)
    for v in order:
        for w in np.flatnonzero(a[v]):
            ending[w] += ending[v] * int(a[v, w])
    return int(ending.sum())


def is_acyclic(q: Quiver) -> bool:
    return path_count(q) != INFINITE


# ------------------------------------------------------------ isomorphism

def _signature(a: np.ndarray, v: int):
    out_m = tuple(sorted(int(x) for x in a[v] if x))
    in_m = tuple(sorted(int(x) for x in a[:, v] if x))
    return (int(a[v, v]), out_m, in_m)


def find_isomorphism(q1: Quiver, q2: Quiver):
    """
    Vertex bijection f with q1.arrows[i, j] == q2.arrows[f[i], f[j]], or None.

    Backtracking over vertices in order of rarest signature, matching only
    vertices with equal (loops, out-multiplicities, in-multiplicities).
    """
    a, b = q1.arrows, q2.arrows
    n = len(a)
    if b.shape != a.shape or a.sum() != b.sum():
        return None
    sa = [_signature(a, v) for v in range(n)]
    sb = [_signature(b, v) for v in range(n)]
    if Counter(sa) != Counter(sb):
        return None
    freq = Counter(sa)
    und = underlying_graph(a) > 0
    # order: rare signatures first, then neighbours of already placed vertices
    order = []
    placed = set()
    remaining = set(range(n))
    while remaining:
        frontier = [v for v in remaining if any(und[v, w] for w in placed)]
        pool = frontier or list(remaining)
        v = min(pool, key=lambda x: (freq[sa[x]], x))
        order.append(v)
        placed.add(v)
        remaining.discard(v)
    cand = {v: [w for w in range(n) if sb[w] == sa[v]] for v in range(n)}
    f = {}
    used = set()

    def consistent(v, w):
        for u, x in f.items():
            if a[v, u] != b[w, x] or a[u, v] != b[x, w]:
                return False
        return True

    def search(k):
        if k == n:
            return True
        v = order[k]
        for w in cand[v]:
            if w in used or not consistent(v, w):
                continue
            f[v] = w
            used.add(w)
            if search(k + 1):
                return True
            del f[v]
            used.discard(w)
        return False

    if search(0):
        return [f[v] for v in range(n)]
    return None


def isomorphic(q1: Quiver, q2: Quiver) -> bool:
    return find_isomorphism(q1, q2) is not None


def brute_force_isomorphic(q1: Quiver, q2: Quiver) -> bool:
    """Exhaustive check for tiny quivers (testing aid)."""
    a, b = q1.arrows, q2.arrows
    if a.shape != b.shape:
        return False
    for perm in permutations(range(len(a))):
        p = list(perm)
        if np.array_equal(a, b[np.ix_(p, p)]):
            return True
    return False


# ------------------------------------------------------------ the type B arrow formula

def _remove_part(lam: tuple, part: int):
    if part not in lam:
        return None
    out = list(lam)
    out.remove(part)
    return tuple(out)


def _union(*parts) -> tuple:
    return tuple(sorted((x for p in parts for x in p), reverse=True))


def type_b_arrow_count(lam: tuple, mu: tuple) -> int:
    """Arrow count lam -> mu in the type B Ext-quiver away from bad primes (# is multiset union)."""
    for s in set(lam):
        delta = _remove_part(lam, s)
        for a in range(1, s):
            for b in range(1, a):
                c = s - a - b
                if 1 <= c < b and _union(delta, (a, b, c)) == mu:
                    return 2
    for s in set(lam):
        delta = _remove_part(lam, s)
        for b in range(1, s):
            a = s - 2 * b
            if a >= 1 and a != b and _union(delta, (a, b, b)) == mu:
                return 1
    if len(mu) == len(lam) + 2:
        rest = list(mu)
        for x in lam:
            if x not in rest:
                return 0
            rest.remove(x)
        a, b = rest[0], rest[1]
        if a > b:
            return 1
    return 0


def type_b_formula_quiver(n: int, p: int = 0) -> Quiver:
    """Ext-quiver of the type B_n descent algebra predicted by the arrow formula."""
    if p and (2 ** n * factorial(n)) % p == 0:
        raise HypothesisViolated(f"p = {p} divides |B_{n}|")
    verts = partitions_upto(n)
    m = np.array([[type_b_arrow_count(lam, mu) for mu in verts] for lam in verts], dtype=np.int64)
    return Quiver([format_partition(v) for v in verts], m)


# ------------------------------------------------------------ representation type

FINITE, TAME, WILD = "Finite", "Tame", "Wild"


@dataclass(frozen=True)
class RepTypeVerdict:
    verdict: str
    certificate: str
    components: tuple = ()

    def __str__(self) -> str:
        return f"{self.verdict} ({self.certificate})"


def _verdict_from_classes(classes) -> str:
    if any(c == "Other" for c in classes):
        return WILD
    if any(is_extended(c) for c in classes):
        return TAME
    return FINITE


def rep_type_certificate(quiver: Quiver, rad_squared_zero: bool, algebra_dim: int):
    """
    Representation type backed by a certificate, or None.

    1. a separated-quiver component that is neither Dynkin nor extended
       Dynkin forces wild type (valid without conditions);
    2. with Rad^2 = 0 the separated quiver decides the type exactly;
    3. if the quiver is acyclic and its path algebra has dimension dim A,
       then A is that path algebra and the underlying graph decides.
    """
    sep = separated_quiver(quiver)
    sep_classes = tuple(classify_components(underlying_graph(sep.arrows)))
    if "Other" in sep_classes:
        return RepTypeVerdict(WILD, "WildQuotient", sep_classes)
    if rad_squared_zero:
        return RepTypeVerdict(_verdict_from_classes(sep_classes), "SeparatedQuiverExact", sep_classes)
    if path_count(quiver) == algebra_dim:
        classes = tuple(classify_components(underlying_graph(quiver.arrows)))
        return RepTypeVerdict(_verdict_from_classes(classes), "PathAlgebra", classes)
    return None


def component_report(quiver: Quiver) -> str:
    sep = separated_quiver(quiver)
    return json.dumps({
        "quiver": classify_components(underlying_graph(quiver.arrows)),
        "separated": classify_components(underlying_graph(sep.arrows)),
    })
