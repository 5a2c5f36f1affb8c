"""Small finite posets given by cover relations, with isomorphism tests."""

from __future__ import annotations

from typing import Dict, Hashable, Iterable, List, Sequence, Tuple

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .errors import TooLarge

MAX_ISO_SIZE = 400


class FinitePoset:
    """Elements ``0..size-1`` with relations generated by ``(lower, upper)`` pairs."""

    def __init__(self, size: int, relations: Iterable[Tuple[int, int]], labels: Sequence[Hashable] = ()):
        self.size = size
        self.labels = list(labels) if labels else list(range(size))
        self.relations = sorted(set(relations))
        above = [0] * size
        for lo, hi in self.relations:
            above[lo] |= 1 << hi
        # reflexive-transitive closure, processed in a topological order
        order = self._topological(above)
        self._up = [1 << x for x in range(size)]
        for x in reversed(order):
            for y in _bits(above[x]):
                self._up[x] |= self._up[y]

    @staticmethod
    def _topological(above: List[int]) -> List[int]:
        indeg = [0] * len(above)
        for x, m in enumerate(above):
            for y in _bits(m):
                indeg[y] += 1
        stack = [x for x in range(len(above)) if indeg[x] == 0]
        out = []
        while stack:
            x = stack.pop()
            out.append(x)
            for y in _bits(above[x]):
                indeg[y] -= 1
                if indeg[y] == 0:
                    stack.append(y)
        if len(out) != len(above):
            raise ValueError("relations contain a cycle")
        return out

    def leq(self, x: int, y: int) -> bool:
        return bool(self._up[x] >> y & 1)

    def up_set(self, x: int) -> int:
        return self._up[x]

    def covers(self) -> List[Tuple[int, int]]:
        """Hasse diagram as (lower, upper) pairs."""
        out = []
        for x in range(self.size):
            strict = self._up[x] & ~(1 << x)
            for y in _bits(strict):
                between = strict & ~(1 << y)
                if not any(self.leq(z, y) for z in _bits(between)):
                    out.append((x, y))
        return out

    def minima(self) -> List[int]:
        return [y for y in range(self.size) if not any(self.leq(x, y) for x in range(self.size) if x != y)]

    def maxima(self) -> List[int]:
        return [x for x in range(self.size) if self._up[x] == 1 << x]

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.size, [(hi, lo) for lo, hi in self.relations], self.labels)

    def hasse_graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(self.size))
        g.add_edges_from(self.covers())
        return g

    def is_isomorphic(self, other: "FinitePoset") -> bool:
        if max(self.size, other.size) > MAX_ISO_SIZE:
            raise TooLarge(f"isomorphism test limited to {MAX_ISO_SIZE} elements")
        if self.size != other.size:
            return False
        return DiGraphMatcher(self.hasse_graph(), other.hasse_graph()).is_isomorphic()

    def isomorphism(self, other: "FinitePoset") -> Dict[int, int]:
        m = DiGraphMatcher(self.hasse_graph(), other.hasse_graph())
        return dict(m.mapping) if m.is_isomorphic() else {}


def relation_is_partial_order(size: int, geq) -> List[str]:
    """Check reflexivity, antisymmetry and transitivity of a relation given as ``geq(x, y)``."""
    table = [[bool(geq(x, y)) for y in range(size)] for x in range(size)]
    problems = []
    for x in range(size):
        if not table[x][x]:
            problems.append(f"not reflexive at {x}")
        for y in range(x + 1, size):
            if table[x][y] and table[y][x]:
                problems.append(f"not antisymmetric: {x}, {y}")
    rows = [sum(1 << y for y in range(size) if table[x][y]) for x in range(size)]
    for x in range(size):
        for y in _bits(rows[x]):
            if rows[y] & ~rows[x]:
                problems.append(f"not transitive through {x} >= {y}")
                break
    return problems


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
