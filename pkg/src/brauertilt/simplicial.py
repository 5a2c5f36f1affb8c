"""The simplicial complex of 2-term pretilting complexes as a clique complex.

Vertices are signed walks; a set of walks is a face iff the walks are pairwise
compatible, because Hom vanishing is additive over direct sums.  Cliques are
counted by size on integer bitsets; facets come from Bron-Kerbosch with pivoting.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import BrauerTreeAlgebra
from .errors import UnknownEdge
from .homotopy import Compat, HomOracle, compatible_fast, direct_sum, is_pretilting
from .tree import BrauerTree, checked
from .walks import SignedWalk, enumerate_signed_walks, g_vector


@dataclass
class FaceComplex:
    tree: BrauerTree
    walks: List[SignedWalk]
    adjacency: List[int]  # bitmask of compatible walk indices, no self-loops
    f_vector: Tuple[int, ...]
    facets: List[Tuple[int, ...]]
    oracle: HomOracle = field(repr=False)
    notes: List[str] = field(default_factory=list)
    filter_stats: Dict[str, int] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.tree.n

    @property
    def h_vector(self) -> Tuple[int, ...]:
        return f_to_h(self.f_vector)

    def compatible(self, a: int, b: int) -> bool:
        return bool(self.adjacency[a] >> b & 1)

    def g(self, k: int) -> Tuple[int, ...]:
        return g_vector(self.walks[k], self.n)

    def facet_walks(self, facet: Sequence[int]) -> List[SignedWalk]:
        return [self.walks[k] for k in facet]


# --- clique enumeration ------------------------------------------------------------------


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def count_cliques(adjacency: Sequence[int], mask: Optional[int] = None, max_size: Optional[int] = None) -> List[int]:
    """``out[s]`` = number of cliques of size ``s`` inside ``mask`` (``out[0] = 1``)."""
    if mask is None:
        mask = (1 << len(adjacency)) - 1
    if max_size is None:
        max_size = len(adjacency)
    out = [0] * (max_size + 1)
    out[0] = 1

    def rec(cands: int, size: int):
        # cands: vertices extending the current clique of the given size
        c = cands.bit_count()
        if all((adjacency[v] | (1 << v)) & cands == cands for v in _bits(cands)):
            for s in range(1, min(c, max_size - size) + 1):
                out[size + s] += comb(c, s)
            return
        rest = cands
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            out[size + 1] += 1
            if size + 1 < max_size:
                nxt = rest & adjacency[v]
                if nxt:
                    rec(nxt, size + 1)

    if mask:
        rec(mask, 0)
    return out


def maximal_cliques(adjacency: Sequence[int]) -> List[Tuple[int, ...]]:
    """Bron-Kerbosch with Tomita pivoting; cliques returned sorted."""
    out: List[Tuple[int, ...]] = []

    def bk(r: List[int], p: int, x: int):
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        best, pivot = -1, 0
        for u in _bits(p | x):
            k = (p & adjacency[u]).bit_count()
            if k > best:
                best, pivot = k, u
        for v in _bits(p & ~adjacency[pivot]):
            bk(r + [v], p & adjacency[v], x & adjacency[v])
            p &= ~(1 << v)
            x |= 1 << v

    bk([], (1 << len(adjacency)) - 1, 0)
    out.sort()
    return out


# --- construction ------------------------------------------------------------------------


def _row_worker(args):
    tree, start, stop = args
    oracle = HomOracle(BrauerTreeAlgebra(tree))
    walks = enumerate_signed_walks(tree)
    return [
        [b for b in range(a + 1, len(walks)) if oracle.compatible(walks[a], walks[b])]
        for a in range(start, stop)
    ]


_CACHE: Dict[tuple, FaceComplex] = {}


def build_complex(tree: BrauerTree, threads: int = 1, use_cache: bool = True) -> FaceComplex:
    """Compatibility graph (sign filter, then exact Hom oracle) and its clique counts."""
    checked(tree)
    notes = []
    work = tree
    if tree.multiplicity != 1:
        notes.append(
            f"multiplicity {tree.multiplicity} replaced by 1 for the Hom oracle; face counts do not depend on it"
        )
        work = replace(tree, multiplicity=1)
    key = work.key()
    if use_cache and key in _CACHE:
        cx = _CACHE[key]
        return replace(cx, tree=tree, notes=notes + cx.notes)

    oracle = HomOracle(BrauerTreeAlgebra(work))
    walks = enumerate_signed_walks(work)
    m = len(walks)
    adj = [0] * m
    stats = {"pairs": m * (m - 1) // 2, "filtered": 0, "oracle_calls": 0}
    for a in range(m):
        for b in range(a + 1, m):
            if compatible_fast(work, walks[a], walks[b]) is Compat.INCOMPATIBLE:
                stats["filtered"] += 1
    if threads > 1 and m > 20:
        chunks = [(work, s, min(s + max(1, m // (4 * threads)), m)) for s in range(0, m, max(1, m // (4 * threads)))]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            rows = [r for part in pool.map(_row_worker, chunks) for r in part]
        for a, row in enumerate(rows):
            for b in row:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
        stats["oracle_calls"] = stats["pairs"] - stats["filtered"]
    else:
        for a in range(m):
            for b in range(a + 1, m):
                if compatible_fast(work, walks[a], walks[b]) is Compat.INCOMPATIBLE:
                    continue
                stats["oracle_calls"] += 1
                if oracle.pretilting_pair(walks[a], walks[b]):
                    adj[a] |= 1 << b
                    adj[b] |= 1 << a
    n = work.n
    counts = count_cliques(adj, max_size=n)
    facets = maximal_cliques(adj)
    cx = FaceComplex(work, walks, adj, tuple(counts), facets, oracle, [], stats)
    if use_cache:
        _CACHE[key] = cx
    return replace(cx, tree=tree, notes=notes) if notes else cx


# --- vectors and formulas ------------------------------------------------------------------


def f_to_h(f_vector: Sequence[int]) -> Tuple[int, ...]:
    """Coefficients of ``F(x - 1)`` where ``F(x) = sum_j f_{j-1} x^{n-j}``, leading first."""
    n = len(f_vector) - 1
    return tuple(
        sum((-1) ** (j - k) * comb(n - k, j - k) * f_vector[k] for k in range(j + 1)) for j in range(n + 1)
    )


def formula_f(n: int) -> Tuple[int, ...]:
    """``f_{j-1} = (n+j)! / (j! j! (n-j)!)`` for ``j = 0..n``."""
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(factorial(n + j) // (factorial(j) ** 2 * factorial(n - j)) for j in range(n + 1))


def formula_h(n: int) -> Tuple[int, ...]:
    if n < 1:
        raise ValueError("n must be positive")
    return tuple(comb(n, j) ** 2 for j in range(n + 1))


# --- half-space counts and sphere checks --------------------------------------------------


def halfspace_counts(cx: FaceComplex, i: int) -> List[Tuple[int, int, int]]:
    """Per face size ``j = 0..n``: faces avoiding +1 at ``i``, avoiding -1, avoiding both."""
    if i not in cx.tree.edges:
        raise UnknownEdge(f"edge {i} is not in the tree")
    le = ge = 0
    for k, w in enumerate(cx.walks):
        s = w.sign(i)
        if s != 1:
            le |= 1 << k
        if s != -1:
            ge |= 1 << k
    n = cx.n
    a = count_cliques(cx.adjacency, le, n)
    b = count_cliques(cx.adjacency, ge, n)
    c = count_cliques(cx.adjacency, le & ge, n)
    return [(a[j], b[j], c[j]) for j in range(n + 1)]


def facet_adjacency(facets: Sequence[Tuple[int, ...]]) -> Dict[Tuple[int, ...], List[Tuple[int, int]]]:
    """Ridge -> list of (facet index, dropped walk index)."""
    ridges: Dict[Tuple[int, ...], List[Tuple[int, int]]] = {}
    for fi, facet in enumerate(facets):
        for k, v in enumerate(facet):
            ridges.setdefault(facet[:k] + facet[k + 1 :], []).append((fi, v))
    return ridges


def sphere_checks(cx: FaceComplex) -> List[str]:
    """Violations of purity, pseudomanifold, connectivity and Euler characteristic."""
    n = cx.n
    problems = []
    for facet in cx.facets:
        if len(facet) != n:
            problems.append(f"maximal face of size {len(facet)}: {facet}")
    ridges = facet_adjacency(cx.facets)
    for ridge, owners in ridges.items():
        if len(owners) != 2:
            problems.append(f"ridge {ridge} lies in {len(owners)} facets")
    if cx.facets:
        graph: Dict[int, List[int]] = {k: [] for k in range(len(cx.facets))}
        for owners in ridges.values():
            if len(owners) == 2:
                (p, _), (q, _) = owners
                graph[p].append(q)
                graph[q].append(p)
        seen = {0}
        stack = [0]
        while stack:
            for q in graph[stack.pop()]:
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        if len(seen) != len(cx.facets):
            problems.append("facet adjacency graph is disconnected")
    euler = sum((-1) ** j * cx.f_vector[j + 1] for j in range(n))
    if euler != 1 + (-1) ** (n - 1):
        problems.append(f"Euler characteristic {euler} differs from {1 + (-1) ** (n - 1)}")
    return problems


def facet_pretilting_sample(cx: FaceComplex, sample: int = 100, seed: int = 0) -> List[Tuple[int, ...]]:
    """Facets whose full direct sum fails to be pretilting among a random sample."""
    rng = random.Random(seed)
    facets = cx.facets if len(cx.facets) <= sample else rng.sample(cx.facets, sample)
    bad = []
    for facet in facets:
        T = direct_sum([cx.oracle.complex(w) for w in cx.facet_walks(facet)])
        if not is_pretilting(T):
            bad.append(facet)
    return bad


def facets_to_json(cx: FaceComplex) -> dict:
    return {
        "n": cx.n,
        "walks": [{"edges": list(w.edges), "signs": list(w.signs)} for w in cx.walks],
        "f_vector": list(cx.f_vector),
        "h_vector": list(cx.h_vector),
        "facets": [list(f) for f in cx.facets],
    }
