"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations

from itertools import permutations, product

import networkx as nx
import sympy

from brauertilt.tree import BrauerTree


# --- plane trees by brute force ---------------------------------------------------


def all_cyclic_assignments(graph: nx.Graph):
    """Every plane embedding of a tree on vertices 0.. with edges numbered 1.. in sorted order."""
    edges = {k + 1: tuple(e) for k, e in enumerate(sorted(tuple(sorted(e)) for e in graph.edges))}
    incident = {v: [e for e, ab in edges.items() if v in ab] for v in graph.nodes}
    choices = []
    for v in sorted(incident):
        first, *rest = sorted(incident[v])
        choices.append([(v, (first,) + p) for p in permutations(rest)])
    for combo in product(*choices):
        yield BrauerTree(tuple(sorted(graph.nodes)), edges, dict(combo))


def brute_force_isomorphic(t1: BrauerTree, t2: BrauerTree) -> bool:
    """Try every vertex bijection and check edges and cyclic orders (up to rotation)."""
    if t1.n != t2.n:
        return False
    v1, v2 = list(t1.vertices), list(t2.vertices)
    e2 = {frozenset(ab): e for e, ab in t2.edges.items()}
    for perm in permutations(v2):
        phi = dict(zip(v1, perm))
        emap = {}
        for e, (a, b) in t1.edges.items():
            img = e2.get(frozenset((phi[a], phi[b])))
            if img is None:
                break
            emap[e] = img
        else:
            ok = True
            for v in v1:
                mapped = tuple(emap[e] for e in t1.cyclic_order[v])
                target = t2.cyclic_order[phi[v]]
                k = target.index(mapped[0])
                if target[k:] + target[:k] != mapped:
                    ok = False
                    break
            if ok:
                return True
    return False


def plane_trees_brute(n: int):
    """Representatives of plane trees with ``n`` edges, deduplicated pairwise."""
    reps = []
    for g in nx.nonisomorphic_trees(n + 1) if n >= 1 else []:
        for t in all_cyclic_assignments(g):
            if not any(brute_force_isomorphic(t, r) for r in reps):
                reps.append(t)
    return reps


# --- the algebra as paths in the quiver -------------------------------------------


class PathAlgebra:
    """Basis elements are explicit arrow sequences around one vertex.

    ``(a, ())`` is the idempotent at ``a``; ``(a, arrows)`` is the path leaving
    ``a`` along the listed arrows ``(source, target, vertex)``; ``("soc", a)`` is
    the socle of ``P_a``.  A path is nonzero iff it stays at one vertex and is
    at most one full turn long; full turns at both ends of an edge coincide.
    """

    def __init__(self, tree: BrauerTree):
        self.tree = tree
        self.arrows = []
        for e in tree.edge_ids:
            for x in tree.ends(e):
                order = tree.cyclic_order[x]
                if len(order) > 1:
                    nxt = order[(order.index(e) + 1) % len(order)]
                    self.arrows.append((e, nxt, x))

    def _normal(self, start, arrows):
        if not arrows:
            return (start, ())
        vertex = arrows[0][2]
        if any(a[2] != vertex for a in arrows):
            return None
        for a, b in zip(arrows, arrows[1:]):
            assert a[1] == b[0]
        turn = len(self.tree.cyclic_order[vertex])
        if len(arrows) > turn:
            return None
        if len(arrows) == turn:
            return ("soc", start)
        return (start, tuple(arrows))

    def basis(self, a, b):
        """Paths from ``a`` to ``b`` (these span Hom(P_a, P_b))."""
        out = []
        if a == b:
            out += [(a, ()), ("soc", a)]
            return out
        for x in self.tree.ends(a):
            path, cur = [], a
            for _ in range(len(self.tree.cyclic_order[x]) - 1):
                arrow = next(ar for ar in self.arrows if ar[0] == cur and ar[2] == x)
                path.append(arrow)
                cur = arrow[1]
                if cur == b:
                    out.append((a, tuple(path)))
                    break
        return out

    def compose(self, g, f):
        """``g`` after ``f`` as a basis element or None."""
        if f[0] == "soc":
            return f if g[1] == () else None
        if g[0] == "soc":
            return g if f[1] == () else None
        return self._normal(f[0], list(f[1]) + list(g[1]))


def _space(alg, src, dst):
    return [(j, i, h) for j, b in enumerate(dst) for i, a in enumerate(src) for h in alg.basis(a, b)]


def _matrix_of(alg, dom, cod, fn):
    """Dense matrix with one column per domain basis vector."""
    index = {t: k for k, t in enumerate(cod)}
    cols = []
    for t in dom:
        col = [0] * len(cod)
        for key, c in fn(t):
            col[index[key]] += c
        cols.append(col)
    if not cod:
        return sympy.zeros(0, len(dom))
    if not dom:
        return sympy.zeros(len(cod), 0)
    return sympy.Matrix(cols).T


def walk_complex(alg, walk):
    minus, plus = walk.minus, walk.plus
    diff = {}
    for a, b in zip(walk.edges, walk.edges[1:]):
        src, dst = (a, b) if walk.sign(a) == -1 else (b, a)
        (h,) = alg.basis(src, dst)
        diff[plus.index(dst), minus.index(src)] = h
    return minus, plus, diff


def _post(alg, d):
    def fn(t):
        j, i, e = t
        out = []
        for (r, c), h in d.items():
            if c == j:
                comp = alg.compose(h, e)
                if comp is not None:
                    out.append(((r, i, comp), 1))
        return out

    return fn


def _pre(alg, d, sign=1):
    def fn(t):
        j, i, e = t
        out = []
        for (r, c), h in d.items():
            if r == i:
                comp = alg.compose(e, h)
                if comp is not None:
                    out.append(((j, c, comp), sign))
        return out

    return fn


def _rank(m):
    return 0 if 0 in m.shape else m.rank()


def dense_hom_dim(alg, X, Y, shift):
    """Hom in the homotopy category with dense sympy matrices."""
    xm, xz, dx = X
    ym, yz, dy = Y
    if shift == 1:
        tgt = _space(alg, xm, yz)
        m1 = _matrix_of(alg, _space(alg, xm, ym), tgt, _post(alg, dy))
        m2 = _matrix_of(alg, _space(alg, xz, yz), tgt, _pre(alg, dx))
        return len(tgt) - _rank(m1.row_join(m2)) if tgt else 0
    if shift == -1:
        dom = _space(alg, xz, ym)
        if not dom:
            return 0
        a = _matrix_of(alg, dom, _space(alg, xm, ym), _pre(alg, dx))
        b = _matrix_of(alg, dom, _space(alg, xz, yz), _post(alg, dy))
        return len(dom) - _rank(a.col_join(b))
    h1, h0, tgt = _space(alg, xm, ym), _space(alg, xz, yz), _space(alg, xm, yz)
    cond = _matrix_of(alg, h1, tgt, _post(alg, dy)).row_join(_matrix_of(alg, h0, tgt, _pre(alg, dx, -1)))
    chain = len(h1) + len(h0) - _rank(cond)
    hom = _space(alg, xz, ym)
    htp = _matrix_of(alg, hom, h1, _pre(alg, dx)).col_join(_matrix_of(alg, hom, h0, _post(alg, dy)))
    return chain - _rank(htp)


# --- weak order by brute force -----------------------------------------------------


def naive_congruence(elements, leq, pairs):
    """Smallest join/meet-compatible equivalence via repeated full sweeps."""
    size = len(elements)

    def lub(x, y):
        ups = [z for z in range(size) if leq(x, z) and leq(y, z)]
        return next(z for z in ups if all(leq(z, u) for u in ups))

    def glb(x, y):
        downs = [z for z in range(size) if leq(z, x) and leq(z, y)]
        return next(z for z in downs if all(leq(d, z) for d in downs))

    join = [[lub(x, y) for y in range(size)] for x in range(size)]
    meet = [[glb(x, y) for y in range(size)] for x in range(size)]
    label = list(range(size))

    def merge(a, b):
        la, lb = label[a], label[b]
        if la == lb:
            return False
        lo, hi = min(la, lb), max(la, lb)
        for k in range(size):
            if label[k] == hi:
                label[k] = lo
        return True

    for x, y in pairs:
        merge(x, y)
    changed = True
    while changed:
        changed = False
        for x in range(size):
            for y in range(size):
                if label[x] != label[y]:
                    continue
                for z in range(size):
                    changed |= merge(join[x][z], join[y][z])
                    changed |= merge(meet[x][z], meet[y][z])
    return label, join, meet
