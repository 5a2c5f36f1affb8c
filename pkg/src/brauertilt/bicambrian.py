"""Weak order on ``S_{n+1}``, Cambrian and biCambrian congruences, quotient posets.

Permutations are tuples in one-line notation on ``1..n+1``.  The right weak
order is containment of value inversion sets ``{(a, b) : a < b, b before a}``,
stored as bitmasks; ``u s_i`` swaps the entries in positions ``i`` and ``i+1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Dict, List, Sequence, Tuple

from .errors import NotACongruence, RankTooLarge
from .poset import FinitePoset

Perm = Tuple[int, ...]


class WeakOrderLattice:
    def __init__(self, n: int):
        if not 1 <= n <= 5:
            raise RankTooLarge(f"weak order is built for ranks 1..5 (got {n})")
        self.n = n
        m = n + 1
        self.m = m
        self.pair_bit: Dict[Tuple[int, int], int] = {}
        for a in range(1, m + 1):
            for b in range(a + 1, m + 1):
                self.pair_bit[a, b] = len(self.pair_bit)
        self.elements: List[Perm] = sorted(permutations(range(1, m + 1)), key=lambda w: (self._inv(w).bit_count(), w))
        self.masks = [self._inv(w) for w in self.elements]
        self.index = {w: k for k, w in enumerate(self.elements)}
        self.by_mask = {mk: k for k, mk in enumerate(self.masks)}
        self.bottom = 0
        self.top = len(self.elements) - 1
        self._join: Dict[Tuple[int, int], int] = {}
        self._meet: Dict[Tuple[int, int], int] = {}
        self.full = (1 << len(self.pair_bit)) - 1

    def __len__(self):
        return len(self.elements)

    def _inv(self, w: Perm) -> int:
        mask = 0
        for p in range(len(w)):
            for q in range(p + 1, len(w)):
                if w[p] > w[q]:
                    mask |= 1 << self.pair_bit[w[q], w[p]]
        return mask

    def leq(self, x: int, y: int) -> bool:
        return self.masks[x] & ~self.masks[y] == 0

    def s(self, i: int) -> int:
        """Index of the simple transposition ``s_i``, ``1 <= i <= n``."""
        return self.times_s(self.bottom, i)

    def times_s(self, x: int, i: int) -> int:
        """Index of ``w s_i``: swap positions ``i`` and ``i+1`` of ``w``."""
        w = list(self.elements[x])
        w[i - 1], w[i] = w[i], w[i - 1]
        return self.index[tuple(w)]

    def covers(self) -> List[Tuple[int, int]]:
        out = []
        for x, w in enumerate(self.elements):
            for i in range(1, self.m):
                if w[i - 1] < w[i]:
                    out.append((x, self.times_s(x, i)))
        return sorted(out)

    def _close(self, mask: int) -> int:
        """Transitive closure of an inversion relation (``b`` before ``a``, ``a < b``)."""
        m = self.m
        before = [0] * (m + 1)  # before[b]: smaller values that b precedes
        for (a, b), bit in self.pair_bit.items():
            if mask >> bit & 1:
                before[b] |= 1 << a
        changed = True
        while changed:
            changed = False
            for b in range(1, m + 1):
                acc = before[b]
                for a in range(1, b):
                    if acc >> a & 1:
                        acc |= before[a]
                if acc != before[b]:
                    before[b] = acc
                    changed = True
        out = 0
        for b in range(1, m + 1):
            for a in range(1, b):
                if before[b] >> a & 1:
                    out |= 1 << self.pair_bit[a, b]
        return out

    def join(self, x: int, y: int) -> int:
        if x > y:
            x, y = y, x
        key = (x, y)
        r = self._join.get(key)
        if r is None:
            r = self._join[key] = self.by_mask[self._close(self.masks[x] | self.masks[y])]
        return r

    def complement(self, x: int) -> int:
        """``w w_0``: reverse the one-line notation (inversion set complemented)."""
        return self.by_mask[self.full & ~self.masks[x]]

    def meet(self, x: int, y: int) -> int:
        if x > y:
            x, y = y, x
        key = (x, y)
        r = self._meet.get(key)
        if r is None:
            r = self._meet[key] = self.complement(self.join(self.complement(x), self.complement(y)))
        return r

    def as_poset(self) -> FinitePoset:
        return FinitePoset(len(self), self.covers(), self.elements)


def weak_order(n: int) -> WeakOrderLattice:
    return WeakOrderLattice(n)


# --- congruences ------------------------------------------------------------------------


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx > ry:
            rx, ry = ry, rx
        self.parent[ry] = rx
        return True


@dataclass
class Congruence:
    lattice: WeakOrderLattice
    labels: List[int]  # class label per element, classes numbered by first element
    generators: List[Tuple[int, int]]

    @property
    def num_classes(self) -> int:
        return len(set(self.labels))

    def classes(self) -> List[List[int]]:
        out: Dict[int, List[int]] = {}
        for x, c in enumerate(self.labels):
            out.setdefault(c, []).append(x)
        return [out[c] for c in sorted(out)]

    def equivalent(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    def refines(self, other: "Congruence") -> bool:
        return all(other.equivalent(x, y) for x, y in _class_pairs(self))


def _class_pairs(cong: Congruence):
    for cls in cong.classes():
        for y in cls[1:]:
            yield cls[0], y


def _labels(uf: _UnionFind, size: int) -> List[int]:
    first: Dict[int, int] = {}
    out = []
    for x in range(size):
        r = uf.find(x)
        if r not in first:
            first[r] = len(first)
        out.append(first[r])
    return out


def congruence_closure(lattice: WeakOrderLattice, pairs: Sequence[Tuple[int, int]]) -> Congruence:
    """Smallest congruence identifying every given pair.

    Each successful union is queued; translating a queued pair by every ``z``
    under join and meet and identifying the results reaches the fixpoint.
    """
    size = len(lattice)
    uf = _UnionFind(size)
    work = [(x, y) for x, y in pairs if uf.union(x, y)]
    while work:
        x, y = work.pop()
        for z in range(size):
            for a, b in ((lattice.join(x, z), lattice.join(y, z)), (lattice.meet(x, z), lattice.meet(y, z))):
                if uf.union(a, b):
                    work.append((a, b))
    return Congruence(lattice, _labels(uf, size), list(pairs))


def is_congruence(lattice: WeakOrderLattice, labels: Sequence[int]) -> bool:
    """Direct check of join/meet compatibility for a partition given by labels."""
    size = len(lattice)
    classes: Dict[int, List[int]] = {}
    for x, c in enumerate(labels):
        classes.setdefault(c, []).append(x)
    for cls in classes.values():
        for y in cls[1:]:
            x = cls[0]
            for z in range(size):
                if labels[lattice.join(x, z)] != labels[lattice.join(y, z)]:
                    return False
                if labels[lattice.meet(x, z)] != labels[lattice.meet(y, z)]:
                    return False
    return True


def bipartite_arrows(n: int, inverse: bool = False) -> List[Tuple[int, int]]:
    """Arrows ``j -> i`` of the bipartite type-A quiver.

    ``c`` is the product of the odd simple reflections followed by the even
    ones; ``s_i`` precedes ``s_j`` in ``c`` whenever ``j -> i``, so arrows run
    from even to odd indices.  ``c^{-1}`` reverses every arrow.
    """
    arrows = []
    for k in range(1, n):
        odd, even = (k, k + 1) if k % 2 else (k + 1, k)
        arrows.append((odd, even) if inverse else (even, odd))
    return arrows


def cambrian_congruence(lattice: WeakOrderLattice, inverse: bool = False) -> Congruence:
    """Smallest congruence contracting ``s_j s_i -> s_j`` for every arrow ``j -> i``."""
    pairs = []
    for j, i in bipartite_arrows(lattice.n, inverse):
        sj = lattice.s(j)
        pairs.append((sj, lattice.times_s(sj, i)))
    return congruence_closure(lattice, pairs)


def meet_of_congruences(c1: Congruence, c2: Congruence) -> Congruence:
    """Common refinement of two partitions (meet in the congruence lattice)."""
    keys: Dict[Tuple[int, int], int] = {}
    labels = []
    for a, b in zip(c1.labels, c2.labels):
        if (a, b) not in keys:
            keys[a, b] = len(keys)
        labels.append(keys[a, b])
    return Congruence(c1.lattice, labels, [])


def bicambrian_congruence(lattice: WeakOrderLattice) -> Congruence:
    cong = meet_of_congruences(cambrian_congruence(lattice), cambrian_congruence(lattice, inverse=True))
    if not is_congruence(lattice, cong.labels):
        raise NotACongruence("meet of the two Cambrian congruences is not a congruence")
    return cong


def quotient_poset(lattice: WeakOrderLattice, cong: Congruence) -> FinitePoset:
    """``C1 <= C2`` iff some ``x1`` in ``C1`` lies below some ``x2`` in ``C2``; generated by covers."""
    rel = {(cong.labels[x], cong.labels[y]) for x, y in lattice.covers()}
    rel = {(a, b) for a, b in rel if a != b}
    labels = [tuple(lattice.elements[x] for x in cls) for cls in cong.classes()]
    return FinitePoset(cong.num_classes, rel, labels)


def class_intervals_ok(lattice: WeakOrderLattice, cong: Congruence) -> bool:
    """Every class is an interval ``[min, max]`` of the weak order."""
    for cls in cong.classes():
        lo = min(cls, key=lambda x: lattice.masks[x].bit_count())
        hi = max(cls, key=lambda x: lattice.masks[x].bit_count())
        members = set(cls)
        interval = {x for x in range(len(lattice)) if lattice.leq(lo, x) and lattice.leq(x, hi)}
        if interval != members:
            return False
    return True


def iso_check(p1: FinitePoset, p2: FinitePoset) -> bool:
    return p1.is_isomorphic(p2)


def quotient_dot(poset: FinitePoset) -> str:
    lines = ["digraph quotient {", "  rankdir=BT;"]
    for k in range(poset.size):
        rep = "".join(map(str, poset.labels[k][0])) if poset.labels[k] else str(k)
        lines.append(f'  C{k} [label="{rep}"];')
    for lo, hi in poset.covers():
        lines.append(f"  C{lo} -> C{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"
