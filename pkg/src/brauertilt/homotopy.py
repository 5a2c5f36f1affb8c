"""Hom spaces between 2-term complexes of projectives in the homotopy category.

For 2-term complexes ``X = (X^-1 -> X^0)`` and ``Y``:

* ``Hom(X, Y[1]) = Hom(X^-1, Y^0) / (d_Y Hom(X^-1, Y^-1) + Hom(X^0, Y^0) d_X)``
* ``Hom(X, Y[-1]) = {f : X^0 -> Y^-1 | f d_X = 0, d_Y f = 0}``
* ``Hom(X, Y)`` = chain maps modulo ``(h d_X, d_Y h)`` for ``h : X^0 -> Y^-1``.

Shifted differentials carry no sign; dimensions do not depend on it.
Everything is computed by exact rank computations on Hom-basis coordinates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Dict, Iterable, List, Sequence, Tuple

from .algebra import BrauerTreeAlgebra, HomElement
from .errors import AlgebraMismatch, NotTilting
from .linalg import nullspace, rank
from .walks import SignedWalk, to_complex

Morphism = Dict[HomElement, int]
MorphismMatrix = Dict[Tuple[int, int], Morphism]


@dataclass(frozen=True, eq=False)
class TwoTermComplex:
    """``P^-1 = sum P_minus[c]`` mapped to ``P^0 = sum P_zero[r]`` by ``diff[r, c]``."""

    minus: Tuple[int, ...]
    zero: Tuple[int, ...]
    diff: MorphismMatrix
    algebra: BrauerTreeAlgebra = field(repr=False)

    def __post_init__(self):
        for (r, c), m in self.diff.items():
            for h in m:
                if h.source != self.minus[c] or h.target != self.zero[r]:
                    raise ValueError(f"differential entry {(r, c)} = {h} lies in the wrong Hom space")

    @property
    def g_vector(self) -> Tuple[int, ...]:
        g = [0] * self.algebra.n
        for a in self.zero:
            g[a - 1] += 1
        for a in self.minus:
            g[a - 1] -= 1
        return tuple(g)

    def shuffled(self, minus_perm: Sequence[int], zero_perm: Sequence[int]) -> "TwoTermComplex":
        """Same complex with summands reordered: new position k holds old ``perm[k]``."""
        inv_m = {old: new for new, old in enumerate(minus_perm)}
        inv_z = {old: new for new, old in enumerate(zero_perm)}
        diff = {(inv_z[r], inv_m[c]): m for (r, c), m in self.diff.items()}
        return TwoTermComplex(
            tuple(self.minus[k] for k in minus_perm),
            tuple(self.zero[k] for k in zero_perm),
            diff,
            self.algebra,
        )


def stalk_complex(algebra: BrauerTreeAlgebra, edge: int, degree: int = 0) -> TwoTermComplex:
    if degree == 0:
        return TwoTermComplex((), (edge,), {}, algebra)
    return TwoTermComplex((edge,), (), {}, algebra)


def direct_sum(complexes: Sequence[TwoTermComplex]) -> TwoTermComplex:
    minus: List[int] = []
    zero: List[int] = []
    diff: MorphismMatrix = {}
    alg = complexes[0].algebra
    for X in complexes:
        if X.algebra is not alg:
            raise AlgebraMismatch("summands live over different algebras")
        om, oz = len(minus), len(zero)
        for (r, c), m in X.diff.items():
            diff[r + oz, c + om] = m
        minus.extend(X.minus)
        zero.extend(X.zero)
    return TwoTermComplex(tuple(minus), tuple(zero), diff, alg)


# --- Hom spaces between direct sums of projectives -----------------------------------


class _Space:
    """Basis of ``Hom(sum P_src, sum P_dst)``: triples (row j, column i, element)."""

    __slots__ = ("basis", "index")

    def __init__(self, alg: BrauerTreeAlgebra, src: Tuple[int, ...], dst: Tuple[int, ...]):
        self.basis = [(j, i, h) for j, b in enumerate(dst) for i, a in enumerate(src) for h in alg.basis(a, b)]
        self.index = {t: k for k, t in enumerate(self.basis)}

    def __len__(self):
        return len(self.basis)


def _space(alg: BrauerTreeAlgebra, src, dst) -> _Space:
    cache = alg.__dict__.setdefault("_space_cache", {})
    key = (src, dst)
    sp = cache.get(key)
    if sp is None:
        sp = cache[key] = _Space(alg, src, dst)
    return sp


def _by_col(d: MorphismMatrix):
    out: Dict[int, List[Tuple[int, Morphism]]] = {}
    for (r, c), m in d.items():
        out.setdefault(c, []).append((r, m))
    return out


def _by_row(d: MorphismMatrix):
    out: Dict[int, List[Tuple[int, Morphism]]] = {}
    for (r, c), m in d.items():
        out.setdefault(r, []).append((c, m))
    return out


def _post_images(alg, dom: _Space, cod: _Space, d: MorphismMatrix, sign: int = 1, offset: int = 0):
    """Images of ``phi -> d . phi`` for every basis vector ``phi`` of ``dom``."""
    dcol = _by_col(d)
    out = []
    for j, i, e in dom.basis:
        vec: Dict[int, int] = {}
        for r, m in dcol.get(j, ()):
            for h, c in m.items():
                comp = alg.compose(h, e)
                if comp is not None:
                    k = cod.index[r, i, comp] + offset
                    vec[k] = vec.get(k, 0) + sign * c
        out.append(vec)
    return out


def _pre_images(alg, dom: _Space, cod: _Space, d: MorphismMatrix, sign: int = 1, offset: int = 0):
    """Images of ``phi -> phi . d`` for every basis vector ``phi`` of ``dom``."""
    drow = _by_row(d)
    out = []
    for j, i, e in dom.basis:
        vec: Dict[int, int] = {}
        for c, m in drow.get(i, ()):
            for h, coeff in m.items():
                comp = alg.compose(e, h)
                if comp is not None:
                    k = cod.index[j, c, comp] + offset
                    vec[k] = vec.get(k, 0) + sign * coeff
        out.append(vec)
    return out


def _merge(a: List[Dict[int, int]], b: List[Dict[int, int]]) -> List[Dict[int, int]]:
    out = []
    for x, y in zip(a, b):
        z = dict(x)
        for k, v in y.items():
            z[k] = z.get(k, 0) + v
        out.append(z)
    return out


def hom_dim(X: TwoTermComplex, Y: TwoTermComplex, shift: int) -> int:
    """``dim Hom(X, Y[shift])`` in the homotopy category, ``shift`` in {-1, 0, 1}."""
    if X.algebra is not Y.algebra:
        raise AlgebraMismatch("complexes live over different algebras")
    alg = X.algebra
    if shift == 1:
        target = _space(alg, X.minus, Y.zero)
        if not len(target):
            return 0
        rows = _post_images(alg, _space(alg, X.minus, Y.minus), target, Y.diff)
        rows += _pre_images(alg, _space(alg, X.zero, Y.zero), target, X.diff)
        return len(target) - rank(rows)
    if shift == -1:
        dom = _space(alg, X.zero, Y.minus)
        if not len(dom):
            return 0
        c1 = _space(alg, X.minus, Y.minus)
        c2 = _space(alg, X.zero, Y.zero)
        rows = _merge(
            _pre_images(alg, dom, c1, X.diff),
            _post_images(alg, dom, c2, Y.diff, offset=len(c1)),
        )
        return len(dom) - rank(rows)
    if shift == 0:
        return len(chain_map_basis(X, Y)) - _homotopy_rank(X, Y)
    raise ValueError("shift must be -1, 0 or 1")


def _chain_condition_images(X, Y):
    """Images of ``(f^-1, f^0) -> d_Y f^-1 - f^0 d_X``; domain split as (H^-1, H^0)."""
    alg = X.algebra
    h1 = _space(alg, X.minus, Y.minus)
    h0 = _space(alg, X.zero, Y.zero)
    tgt = _space(alg, X.minus, Y.zero)
    return h1, h0, _post_images(alg, h1, tgt, Y.diff) + _pre_images(alg, h0, tgt, X.diff, sign=-1)


def _homotopy_images(X, Y):
    """Images of ``h -> (h d_X, d_Y h)`` in coordinates of (H^-1, H^0)."""
    alg = X.algebra
    dom = _space(alg, X.zero, Y.minus)
    h1 = _space(alg, X.minus, Y.minus)
    h0 = _space(alg, X.zero, Y.zero)
    return _merge(_pre_images(alg, dom, h1, X.diff), _post_images(alg, dom, h0, Y.diff, offset=len(h1)))


def _homotopy_rank(X, Y) -> int:
    return rank(_homotopy_images(X, Y))


@dataclass
class ChainMap:
    """Pair of morphism matrices ``(f^-1, f^0)`` with rational coefficients."""

    minus: Dict[Tuple[int, int], Dict[HomElement, Fraction]]
    zero: Dict[Tuple[int, int], Dict[HomElement, Fraction]]


def chain_map_basis(X: TwoTermComplex, Y: TwoTermComplex) -> List[ChainMap]:
    h1, h0, images = _chain_condition_images(X, Y)
    basis = []
    for vec in nullspace(images):
        fm: Dict[Tuple[int, int], Dict[HomElement, Fraction]] = {}
        fz: Dict[Tuple[int, int], Dict[HomElement, Fraction]] = {}
        for k, c in enumerate(vec):
            if not c:
                continue
            if k < len(h1):
                j, i, e = h1.basis[k]
                fm.setdefault((j, i), {})[e] = c
            else:
                j, i, e = h0.basis[k - len(h1)]
                fz.setdefault((j, i), {})[e] = c
        basis.append(ChainMap(fm, fz))
    return basis


def _matmul(alg, g, f):
    """Matrix of morphisms ``g . f``; keys are (row, column)."""
    out: Dict[Tuple[int, int], Dict[HomElement, Fraction]] = {}
    f_by_row: Dict[int, list] = {}
    for (r, c), m in f.items():
        f_by_row.setdefault(r, []).append((c, m))
    for (r, k), gm in g.items():
        for c, fm in f_by_row.get(k, ()):
            prod = alg.compose_linear(gm, fm)
            if prod:
                acc = out.setdefault((r, c), {})
                for h, v in prod.items():
                    acc[h] = acc.get(h, 0) + v
    return {k: {h: v for h, v in m.items() if v} for k, m in out.items() if any(m.values())}


def compose_chain(X, Y, Z, g: ChainMap, f: ChainMap) -> ChainMap:
    """``g . f`` for ``f : X -> Y`` and ``g : Y -> Z``."""
    alg = X.algebra
    return ChainMap(_matmul(alg, g.minus, f.minus), _matmul(alg, g.zero, f.zero))


def _coords(X, Y, phi: ChainMap) -> Dict[int, int]:
    alg = X.algebra
    h1 = _space(alg, X.minus, Y.minus)
    h0 = _space(alg, X.zero, Y.zero)
    vec: Dict[int, Fraction] = {}
    for (j, i), m in phi.minus.items():
        for h, c in m.items():
            vec[h1.index[j, i, h]] = c
    for (j, i), m in phi.zero.items():
        for h, c in m.items():
            vec[len(h1) + h0.index[j, i, h]] = c
    den = lcm(*[Fraction(v).denominator for v in vec.values()]) if vec else 1
    return {k: int(Fraction(v) * den) for k, v in vec.items() if v}


def is_null_homotopic(X, Y, phi: ChainMap) -> bool:
    v = _coords(X, Y, phi)
    if not v:
        return True
    rows = _homotopy_images(X, Y)
    return rank(rows + [v]) == rank(rows)


# --- walk-level predicates -------------------------------------------------------------


class Compat(enum.Enum):
    INCOMPATIBLE = "incompatible"
    UNKNOWN = "unknown"


def compatible_fast(tree, w: SignedWalk, w2: SignedWalk) -> Compat:
    """Necessary sign conditions for ``w (+) w2`` to be pretilting.

    Opposite signs on a shared edge rule the pair out.  For edge-disjoint walks,
    an edge ``a`` of ``w`` and ``b`` of ``w2`` meeting at a vertex ``x`` must carry
    equal signs when ``a`` and ``b`` are the only walk edges at ``x`` (so the two
    walks concatenate).  If either walk passes through ``x`` the pair may still be
    compatible, so nothing is concluded there.
    """
    s1 = dict(zip(w.edges, w.signs))
    s2 = dict(zip(w2.edges, w2.signs))
    common = s1.keys() & s2.keys()
    if common:
        if any(s1[a] != s2[a] for a in common):
            return Compat.INCOMPATIBLE
        return Compat.UNKNOWN
    for x in _end_vertices(tree, w):
        a = _edge_at(tree, w, x)
        b = _edge_at(tree, w2, x)
        if b is not None and b[1] == 1 and a[1] == 1 and s1[a[0]] != s2[b[0]]:
            return Compat.INCOMPATIBLE
    return Compat.UNKNOWN


def _end_vertices(tree, w: SignedWalk):
    ends = {}
    for e in w.edges:
        for v in tree.ends(e):
            ends[v] = ends.get(v, 0) + 1
    return [v for v, k in ends.items() if k == 1]


def _edge_at(tree, w: SignedWalk, x):
    """(an edge of ``w`` at ``x``, number of such edges), or None."""
    hits = [e for e in w.edges if x in tree.ends(e)]
    return (hits[0], len(hits)) if hits else None


def is_pretilting(X: TwoTermComplex) -> bool:
    return hom_dim(X, X, 1) == 0 and hom_dim(X, X, -1) == 0


def is_pretilting_pair(X: TwoTermComplex, Y: TwoTermComplex) -> bool:
    return (
        hom_dim(X, Y, 1) == 0
        and hom_dim(Y, X, 1) == 0
        and hom_dim(X, Y, -1) == 0
        and hom_dim(Y, X, -1) == 0
    )


class HomOracle:
    """Caches walk complexes and shifted Hom dimensions for one algebra."""

    def __init__(self, algebra: BrauerTreeAlgebra):
        self.algebra = algebra
        self.tree = algebra.tree
        self._complex: Dict[SignedWalk, TwoTermComplex] = {}
        self._hom: Dict[Tuple[SignedWalk, SignedWalk, int], int] = {}

    def complex(self, w: SignedWalk) -> TwoTermComplex:
        X = self._complex.get(w)
        if X is None:
            X = self._complex[w] = to_complex(w, self.algebra)
        return X

    def hom(self, w1: SignedWalk, w2: SignedWalk, shift: int) -> int:
        key = (w1, w2, shift)
        d = self._hom.get(key)
        if d is None:
            d = self._hom[key] = hom_dim(self.complex(w1), self.complex(w2), shift)
        return d

    def pretilting_pair(self, w1: SignedWalk, w2: SignedWalk) -> bool:
        return (
            self.hom(w1, w2, 1) == 0
            and self.hom(w2, w1, 1) == 0
            and self.hom(w1, w2, -1) == 0
            and self.hom(w2, w1, -1) == 0
        )

    def compatible(self, w1: SignedWalk, w2: SignedWalk) -> bool:
        """Filter first, Hom computation only when the filter is inconclusive."""
        if compatible_fast(self.tree, w1, w2) is Compat.INCOMPATIBLE:
            return False
        return self.pretilting_pair(w1, w2)

    def ge(self, T: Iterable[SignedWalk], U: Iterable[SignedWalk]) -> bool:
        U = list(U)
        return all(self.hom(t, u, 1) == 0 for t in T for u in U)


def order_ge(oracle: HomOracle, T: Sequence[SignedWalk], U: Sequence[SignedWalk]) -> bool:
    """``T >= U`` iff ``Hom(T, U[1]) = 0``; both must be 2-term tilting."""
    n = oracle.algebra.n
    for S in (T, U):
        if len(set(S)) != n or not all(
            oracle.compatible(a, b) for k, a in enumerate(S) for b in list(S)[k + 1 :]
        ):
            raise NotTilting(f"{[str(w) for w in S]} is not a 2-term tilting complex")
    return oracle.ge(T, U)


@dataclass
class FilterReport:
    pairs: int = 0
    filtered: int = 0
    unknown_compatible: int = 0
    unknown_incompatible: int = 0
    violations: List[Tuple[SignedWalk, SignedWalk]] = field(default_factory=list)
    beyond: List[Tuple[SignedWalk, SignedWalk]] = field(default_factory=list)


def filter_report(oracle: HomOracle, walks: Sequence[SignedWalk]) -> FilterReport:
    """Compare the sign filter with the Hom oracle on every unordered pair (incl. equal walks).

    ``violations`` lists pairs the filter rejects but the oracle accepts (must be
    empty); ``beyond`` lists pairs the filter passes but the oracle rejects.
    """
    rep = FilterReport()
    for k, a in enumerate(walks):
        for b in walks[k:]:
            rep.pairs += 1
            fast = compatible_fast(oracle.tree, a, b)
            truth = oracle.pretilting_pair(a, b)
            if fast is Compat.INCOMPATIBLE:
                rep.filtered += 1
                if truth:
                    rep.violations.append((a, b))
            elif truth:
                rep.unknown_compatible += 1
            else:
                rep.unknown_incompatible += 1
                rep.beyond.append((a, b))
    return rep
