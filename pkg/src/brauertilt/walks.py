"""Alternating signed walks and their 2-term complexes.

Each simple walk between two distinct tree vertices carries one of two
alternating sign patterns; these ``n(n+1)`` signed walks are exactly the
indecomposable 2-term pretilting complexes.  Edges signed ``-1`` sit in degree
-1, edges signed ``+1`` in degree 0.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from itertools import combinations
from typing import List, Sequence, Tuple

from .algebra import BrauerTreeAlgebra
from .tree import BrauerTree


@dataclass(frozen=True, order=True)
class SignedWalk:
    edges: Tuple[int, ...]
    signs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.edges) != len(self.signs) or not self.edges:
            raise ValueError("a signed walk needs one sign per edge and at least one edge")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")
        if any(self.signs[k] != -self.signs[k + 1] for k in range(len(self.signs) - 1)):
            raise ValueError(f"signs do not alternate: {self.signs}")

    def __len__(self):
        return len(self.edges)

    def sign(self, edge: int) -> int:
        """Sign on ``edge``, or 0 if the walk avoids it."""
        try:
            return self.signs[self.edges.index(edge)]
        except ValueError:
            return 0

    @property
    def plus(self) -> Tuple[int, ...]:
        return tuple(e for e, s in zip(self.edges, self.signs) if s == 1)

    @property
    def minus(self) -> Tuple[int, ...]:
        return tuple(e for e, s in zip(self.edges, self.signs) if s == -1)

    def label(self) -> str:
        return " ".join(f"{'+' if s > 0 else '-'}{e}" for e, s in zip(self.edges, self.signs))

    def __str__(self):
        return f"[{self.label()}]"


def is_walk_in(tree: BrauerTree, walk: SignedWalk) -> bool:
    """Consecutive edges share a vertex and no vertex repeats."""
    es = walk.edges
    if len(set(es)) != len(es) or any(e not in tree.edges for e in es):
        return False
    if len(es) == 1:
        return True
    first = set(tree.ends(es[0])) - set(tree.ends(es[1]))
    if len(first) != 1:
        return False
    seen = [first.pop()]
    for e in es:
        a, b = tree.ends(e)
        if seen[-1] not in (a, b):
            return False
        seen.append(b if seen[-1] == a else a)
    return len(set(seen)) == len(seen)


def enumerate_signed_walks(tree: BrauerTree) -> List[SignedWalk]:
    """One walk per (unordered vertex pair, sign choice), read from the smaller vertex id.

    Sorted by length, then edge sequence, then with the +-starting pattern first.
    """
    out = []
    for u, v in combinations(sorted(tree.vertices), 2):
        es = tree.path_edges(u, v)
        for first in (1, -1):
            out.append(SignedWalk(es, tuple(first * (-1) ** k for k in range(len(es)))))
    out.sort(key=lambda w: (len(w), w.edges, [-s for s in w.signs]))
    return out


def g_vector(walk: SignedWalk, n: int) -> Tuple[int, ...]:
    """Coordinates of the class of the walk complex in the basis ``[P_1], ..., [P_n]``."""
    g = [0] * n
    for e, s in zip(walk.edges, walk.signs):
        g[e - 1] = s
    return tuple(g)


def dual(walk: SignedWalk) -> SignedWalk:
    """Same walk with every sign negated."""
    return SignedWalk(walk.edges, tuple(-s for s in walk.signs))


def stalk(edge: int, sign: int = 1) -> SignedWalk:
    return SignedWalk((edge,), (sign,))


def to_complex(walk: SignedWalk, algebra: BrauerTreeAlgebra):
    """``P^-1 = sum of P_a over minus edges -> P^0 = sum over plus edges``.

    The differential has the radical generator ``P_a -> P_b`` for every pair of
    walk-consecutive edges and zeros elsewhere.
    """
    from .homotopy import TwoTermComplex

    minus, plus = walk.minus, walk.plus
    diff = {}
    for a, b in zip(walk.edges, walk.edges[1:]):
        src, dst = (a, b) if walk.sign(a) == -1 else (b, a)
        diff[plus.index(dst), minus.index(src)] = {algebra.arc(src, dst): 1}
    return TwoTermComplex(minus, plus, diff, algebra)


def walks_to_json(walks: Sequence[SignedWalk], n: int) -> str:
    rows = [
        {"edges": list(w.edges), "signs": list(w.signs), "g": list(g_vector(w, n))}
        for w in walks
    ]
    return json.dumps(rows, indent=1) + "\n"


def walks_to_csv(walks: Sequence[SignedWalk], n: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["walk", "signed"] + [f"g{i}" for i in range(1, n + 1)])
    for w in walks:
        writer.writerow(["-".join(map(str, w.edges)), w.label()] + list(g_vector(w, n)))
    return buf.getvalue()
