"""Brauer quiver and the multiplicity-1 Brauer tree algebra.

Hom spaces between indecomposable projectives are tiny: ``Hom(P_a, P_a)`` is
spanned by the identity and the socle element, ``Hom(P_a, P_b)`` for edges
sharing a vertex ``x`` by one path around ``x``, and all other Hom spaces
vanish.  A path around ``x`` is recorded by its step count ``k`` with
``sigma_x^k(a) = b``, so composition is addition of step counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, NamedTuple, Optional, Tuple

from .errors import MultiplicityUnsupported
from .tree import BrauerTree, checked


class Arrow(NamedTuple):
    source: int
    target: int
    vertex: int
    colour: str  # "alpha" or "beta"

    @property
    def name(self) -> str:
        return f"{self.colour}_{self.source}"


@dataclass(frozen=True)
class BrauerQuiver:
    vertices: Tuple[int, ...]
    arrows: Tuple[Arrow, ...]
    cycle_lengths: Dict[int, int]
    colour: Dict[int, str]

    def out_arrows(self, i: int) -> List[Arrow]:
        return [a for a in self.arrows if a.source == i]

    def in_arrows(self, i: int) -> List[Arrow]:
        return [a for a in self.arrows if a.target == i]

    def to_dot(self) -> str:
        lines = ["digraph Q {"]
        for v in self.vertices:
            lines.append(f'  {v} [label="{v}"];')
        for a in self.arrows:
            lines.append(f'  {a.source} -> {a.target} [label="{a.name}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _two_colouring(tree: BrauerTree) -> Dict[int, str]:
    colour = {tree.exceptional: "alpha"}
    nb = tree.neighbours()
    stack = [tree.exceptional]
    while stack:
        x = stack.pop()
        for _, y in nb[x]:
            if y not in colour:
                colour[y] = "beta" if colour[x] == "alpha" else "alpha"
                stack.append(y)
    return colour


def brauer_quiver(tree: BrauerTree) -> BrauerQuiver:
    """Quiver with vertex set the edges of ``tree`` and arrows ``i -> sigma_x(i)``."""
    checked(tree)
    colour = _two_colouring(tree)
    arrows = []
    for i in tree.edge_ids:
        for x in sorted(tree.ends(i), key=lambda v: colour[v] != "alpha"):
            arrows.append(Arrow(i, tree.sigma(x, i), x, colour[x]))
    return BrauerQuiver(
        vertices=tuple(tree.edge_ids),
        arrows=tuple(arrows),
        cycle_lengths={x: tree.degree(x) for x in tree.vertices},
        colour=colour,
    )


class HomElement(NamedTuple):
    """Basis element of ``Hom(P_source, P_target)``.

    ``kind`` is ``"id"``, ``"soc"`` or ``"arc"``; arcs carry the tree vertex
    they turn around and their step count.
    """

    kind: str
    source: int
    target: int
    vertex: Optional[int] = None
    steps: int = 0

    def __str__(self):
        if self.kind == "id":
            return f"e{self.source}"
        if self.kind == "soc":
            return f"soc{self.source}"
        return f"p({self.source}->{self.target}@{self.vertex})"


class BrauerTreeAlgebra:
    """Exact structure constants of ``A_G`` for multiplicity 1."""

    def __init__(self, tree: BrauerTree):
        checked(tree)
        if tree.multiplicity != 1:
            raise MultiplicityUnsupported(
                f"Hom structure is implemented for multiplicity 1 only (got {tree.multiplicity})"
            )
        self.tree = tree
        self.n = tree.n
        self._basis: Dict[Tuple[int, int], Tuple[HomElement, ...]] = {}
        for a in tree.edge_ids:
            for b in tree.edge_ids:
                self._basis[a, b] = self._make_basis(a, b)
        self.compose = lru_cache(maxsize=None)(self._compose)

    def _make_basis(self, a: int, b: int) -> Tuple[HomElement, ...]:
        if a == b:
            return (HomElement("id", a, a), HomElement("soc", a, a))
        x = self.tree.shared_vertex(a, b)
        if x is None:
            return ()
        return (HomElement("arc", a, b, x, self.tree.steps(x, a, b)),)

    def basis(self, a: int, b: int) -> Tuple[HomElement, ...]:
        return self._basis[a, b]

    def dim_hom(self, a: int, b: int) -> int:
        return len(self._basis[a, b])

    def arc(self, a: int, b: int) -> HomElement:
        """The radical generator of ``Hom(P_a, P_b)`` for adjacent ``a != b``."""
        (h,) = self._basis[a, b]
        return h

    def _compose(self, g: HomElement, f: HomElement) -> Optional[HomElement]:
        """``g`` after ``f``; all structure constants are 0 or 1."""
        assert f.target == g.source, "incomposable basis elements"
        if f.kind == "id":
            return g
        if g.kind == "id":
            return f
        if f.kind == "soc" or g.kind == "soc":
            return None
        if f.vertex != g.vertex:
            return None
        total = f.steps + g.steps
        nx = self.tree.degree(f.vertex)
        if total < nx:
            return HomElement("arc", f.source, g.target, f.vertex, total)
        if total == nx:
            return HomElement("soc", f.source, f.source)
        return None

    def compose_linear(self, g: Dict[HomElement, int], f: Dict[HomElement, int]) -> Dict[HomElement, int]:
        out: Dict[HomElement, int] = {}
        for gb, gc in g.items():
            for fb, fc in f.items():
                h = self.compose(gb, fb)
                if h is not None:
                    out[h] = out.get(h, 0) + gc * fc
        return {k: v for k, v in out.items() if v}

    def dimension(self) -> int:
        return sum(len(b) for b in self._basis.values())

    def cartan_matrix(self) -> List[List[int]]:
        ids = self.tree.edge_ids
        return [[self.dim_hom(a, b) for a in ids] for b in ids]


def cartan_matrix(tree: BrauerTree) -> List[List[int]]:
    """Entry ``(b, a)`` is ``dim Hom(P_a, P_b)``, rows and columns in edge-id order."""
    return BrauerTreeAlgebra(tree).cartan_matrix()
