"""The g-polytope: union of the unimodular simplices ``conv(0, g(T_1), ..., g(T_n))``.

Membership is decided through the triangulation: ``z`` lies in ``kP`` iff for
some facet ``T`` the coordinates ``M_T^{-1} z`` are nonnegative with sum at
most ``k``.  Unimodularity keeps all of this in integer arithmetic.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, lcm
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BoxTooLarge, DimensionMismatch, DimensionTooLarge, NonUnimodularFacet
from .linalg import det, inverse_unimodular
from .simplicial import FaceComplex, facet_adjacency

Vector = Tuple[int, ...]

MAX_BOX_POINTS = 10**8


@dataclass
class GPolytope:
    n: int
    vertices: List[Vector]
    facets: List[Tuple[int, ...]]  # indices into vertices
    matrices: List[List[List[int]]]  # columns are the facet's g-vectors
    inverses: List[List[List[int]]]

    def facet_vectors(self, k: int) -> List[Vector]:
        return [self.vertices[v] for v in self.facets[k]]

    def without_facet(self, k: int) -> "GPolytope":
        keep = [j for j in range(len(self.facets)) if j != k]
        return GPolytope(
            self.n,
            self.vertices,
            [self.facets[j] for j in keep],
            [self.matrices[j] for j in keep],
            [self.inverses[j] for j in keep],
        )


def _column_matrix(vectors: Sequence[Vector]) -> List[List[int]]:
    n = len(vectors)
    return [[vectors[c][r] for c in range(n)] for r in range(n)]


def build_polytope(cx: FaceComplex) -> GPolytope:
    vertices = [cx.g(k) for k in range(len(cx.walks))]
    mats, invs = [], []
    for facet in cx.facets:
        m = _column_matrix([vertices[v] for v in facet])
        d = det(m)
        if abs(d) != 1:
            raise NonUnimodularFacet(f"facet {facet} has determinant {d}")
        mats.append(m)
        invs.append(inverse_unimodular(m))
    return GPolytope(cx.n, vertices, list(cx.facets), mats, invs)


def _coords(inv: List[List[int]], z: Sequence[int]) -> List[int]:
    return [sum(a * b for a, b in zip(row, z)) for row in inv]


def min_dilation(poly: GPolytope, z: Sequence[int]) -> Optional[int]:
    """Smallest ``k`` with ``z`` in ``kP`` (always exists; the polytope contains 0 in its interior)."""
    best = None
    for inv in poly.inverses:
        lam = _coords(inv, z)
        if min(lam) >= 0:
            s = sum(lam)
            if best is None or s < best:
                best = s
    return best


def contains(poly: GPolytope, z: Sequence[int], k: int = 1) -> bool:
    if len(z) != poly.n:
        raise DimensionMismatch(f"point has {len(z)} coordinates, polytope lives in dimension {poly.n}")
    if k < 0:
        raise ValueError("dilation must be nonnegative")
    for inv in poly.inverses:
        lam = _coords(inv, z)
        if min(lam) >= 0 and sum(lam) <= k:
            return True
    return False


def _box(n: int, k: int):
    if (2 * k + 1) ** n > MAX_BOX_POINTS:
        raise BoxTooLarge(f"scan of [-{k},{k}]^{n} exceeds {MAX_BOX_POINTS} points")
    return product(range(-k, k + 1), repeat=n)


def dilation_table(poly: GPolytope, k_max: int) -> Dict[Vector, int]:
    """``z -> min k`` for every lattice point of ``k_max P``."""
    out = {}
    for z in _box(poly.n, k_max):
        k = min_dilation(poly, z)
        if k is not None and k <= k_max:
            out[z] = k
    return out


def ehrhart_counts(poly: GPolytope, k_max: int, table: Optional[Dict[Vector, int]] = None) -> List[int]:
    """``L(k) = #(kP cap Z^n)`` for ``k = 0..k_max``."""
    if table is None:
        table = dilation_table(poly, k_max)
    hist = [0] * (k_max + 1)
    for k in table.values():
        hist[k] += 1
    out, acc = [], 0
    for h in hist:
        acc += h
        out.append(acc)
    return out


def h_star(L: Sequence[int], n: int) -> Tuple[int, ...]:
    """Numerator coefficients of ``sum_k L(k) x^k = h*(x) / (1 - x)^(n+1)``, constant term first."""
    if len(L) < n + 1:
        raise ValueError(f"need L(0..{n})")
    return tuple(sum((-1) ** i * comb(n + 1, i) * L[j - i] for i in range(j + 1)) for j in range(n + 1))


# --- symmetry ------------------------------------------------------------------------------


def halfspace_lattice_counts(poly: GPolytope, k_max: int, table=None) -> Dict[int, List[Tuple[int, int]]]:
    """Per coordinate ``i``: ``(#kP cap {z_i <= 0}, #kP cap {z_i >= 0})`` for ``k = 0..k_max``."""
    if table is None:
        table = dilation_table(poly, k_max)
    out = {}
    for i in range(poly.n):
        rows = []
        for k in range(k_max + 1):
            le = sum(1 for z, m in table.items() if m <= k and z[i] <= 0)
            ge = sum(1 for z, m in table.items() if m <= k and z[i] >= 0)
            rows.append((le, ge))
        out[i + 1] = rows
    return out


def check_central_symmetry(poly: GPolytope, k_max: Optional[int] = None) -> bool:
    vs = set(poly.vertices)
    if vs != {tuple(-x for x in v) for v in vs}:
        return False
    k_max = poly.n if k_max is None else k_max
    counts = halfspace_lattice_counts(poly, k_max)
    return all(le == ge for rows in counts.values() for le, ge in rows)


# --- convex hull certificate -------------------------------------------------------------


def hull_inequalities(poly: GPolytope) -> List[Tuple[Tuple[int, ...], int]]:
    """Facet inequalities ``a . x <= b`` of ``conv(vertices)`` with integer ``a``, ``b``.

    Found by trying every hyperplane through ``n`` vertices; the origin is an
    interior point, so every facet hyperplane has the form ``a . x = 1``.
    """
    n = poly.n
    if n > 6:
        raise DimensionTooLarge(f"exhaustive hull search is limited to n <= 6 (got {n})")
    verts = sorted(set(poly.vertices))
    found = set()
    for subset in combinations(verts, n):
        a = _solve([list(map(Fraction, v)) for v in subset], [Fraction(1)] * n)
        if a is None or tuple(a) in found:
            continue
        if all(sum(x * y for x, y in zip(a, v)) <= 1 for v in verts):
            found.add(tuple(a))
    out = []
    for a in sorted(found):
        d = lcm(*[x.denominator for x in a])
        out.append((tuple(int(x * d) for x in a), d))
    return out


def _solve(rows: List[List[Fraction]], rhs: List[Fraction]) -> Optional[List[Fraction]]:
    n = len(rows)
    aug = [r[:] + [b] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if p is None:
            return None
        aug[c], aug[p] = aug[p], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [aug[i][n] for i in range(n)]


def hull_counts(ineqs, n: int, k_max: int) -> List[int]:
    out = []
    for k in range(k_max + 1):
        out.append(
            sum(1 for z in _box(n, k) if all(sum(x * y for x, y in zip(a, z)) <= b * k for a, b in ineqs))
        )
    return out


def check_convexity(poly: GPolytope, report: Optional[dict] = None) -> bool:
    """The union of simplices equals the hull of its vertices.

    The union lies in the hull, so equal lattice-point counts of the dilates
    ``k = 0..n`` (which determine both Ehrhart polynomials) certify equality.
    """
    ineqs = hull_inequalities(poly)
    n = poly.n
    lu = ehrhart_counts(poly, n)
    lh = hull_counts(ineqs, n, n)
    if report is not None:
        report.update(hull_facets=len(ineqs), union_counts=lu, hull_counts=lh)
    return lu == lh


# --- local checks -----------------------------------------------------------------------


def exchange_violations(poly: GPolytope) -> List[str]:
    """For adjacent facets ``R + w`` and ``R + w'``: ``g(w) + g(w')`` is a sum of at most two vectors of ``R``."""
    index = {f: k for k, f in enumerate(poly.facets)}
    bad = []
    for ridge, owners in facet_adjacency(poly.facets).items():
        if len(owners) != 2:
            bad.append(f"ridge {ridge} is not shared by exactly two facets")
            continue
        (fa, wa), (fb, wb) = owners
        s = [x + y for x, y in zip(poly.vertices[wa], poly.vertices[wb])]
        facet = poly.facets[fa]
        lam = _coords(poly.inverses[index[facet]], s)
        coeff = dict(zip(facet, lam))
        rest = [coeff[v] for v in ridge]
        if coeff[wa] != 0 or any(c not in (0, 1) for c in rest) or sum(rest) > 2:
            bad.append(f"facets {fa},{fb}: g-sum has coordinates {lam}")
    return bad


def overlapping_interiors(poly: GPolytope, samples: int = 200, seed: int = 0) -> List[Tuple[int, int]]:
    """Random interior points of facet simplices that also lie in another facet cone."""
    rng = random.Random(seed)
    n = poly.n
    bad = []
    for _ in range(samples):
        k = rng.randrange(len(poly.facets))
        weights = [Fraction(rng.randint(1, 50)) for _ in range(n + 1)]
        total = sum(weights)
        bary = [w / total for w in weights[:n]]  # last weight goes to the origin
        vs = poly.facet_vectors(k)
        z = [sum(b * v[r] for b, v in zip(bary, vs)) for r in range(n)]
        for j, inv in enumerate(poly.inverses):
            if j != k:
                lam = [sum(a * b for a, b in zip(row, z)) for row in inv]
                if min(lam) >= 0:
                    bad.append((k, j))
                    break
    return bad


# --- export ---------------------------------------------------------------------------


def boundary_faces(poly: GPolytope) -> List[Tuple[int, ...]]:
    """Outer faces ``conv(g(T_1), ..., g(T_n))`` of the facet simplices."""
    return [tuple(f) for f in poly.facets]


def off_text(poly: GPolytope) -> str:
    """OFF for ``n <= 3`` (coordinates padded to 3D), ``nOFF`` in higher dimension."""
    n = poly.n
    faces = boundary_faces(poly)
    edges = {tuple(sorted(e)) for f in faces for e in combinations(f, 2)}
    lines = []
    if n <= 3:
        lines.append("OFF")
        lines.append(f"{len(poly.vertices)} {len(faces)} {len(edges)}")
        for v in poly.vertices:
            lines.append(" ".join(str(x) for x in list(v) + [0] * (3 - n)))
    else:
        lines.append("nOFF")
        lines.append(str(n))
        lines.append(f"{len(poly.vertices)} {len(faces)} {len(edges)}")
        for v in poly.vertices:
            lines.append(" ".join(map(str, v)))
    for f in faces:
        lines.append(" ".join(map(str, (len(f),) + f)))
    return "\n".join(lines) + "\n"


def export_off(poly: GPolytope, path) -> None:
    with open(path, "w") as fh:
        fh.write(off_text(poly))


def to_json(poly: GPolytope) -> str:
    return json.dumps(
        {"n": poly.n, "vertices": [list(v) for v in poly.vertices], "facets": [list(f) for f in poly.facets]},
        indent=1,
    ) + "\n"
