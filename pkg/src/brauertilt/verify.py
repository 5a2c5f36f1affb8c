"""The acceptance checks, each returning a pass/fail record with timing."""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import comb
from typing import Callable, List, Optional

from .bicambrian import bicambrian_congruence, iso_check, quotient_poset, weak_order
from .homotopy import HomOracle, filter_report
from .algebra import BrauerTreeAlgebra
from .linalg import det
from .mutation_poset import build_poset, order_problems, verify_end_iso, verify_lemma_num
from .polytope import (
    build_polytope,
    check_central_symmetry,
    check_convexity,
    ehrhart_counts,
    h_star,
)
from .simplicial import build_complex, formula_f, formula_h, halfspace_counts, sphere_checks
from .tree import enumerate_plane_trees, line_tree, star_tree
from .walks import enumerate_signed_walks


@dataclass
class CheckResult:
    number: int
    name: str
    passed: bool
    seconds: float
    detail: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.number:2d} {self.name} ({self.seconds:.2f}s) {self.detail}"


def _trees(n_max: int, n_min: int = 1):
    for n in range(n_min, n_max + 1):
        for t in enumerate_plane_trees(n):
            yield n, t


def check_example_n2(max_n: int = 9) -> CheckResult:
    t0 = time.perf_counter()
    cx = build_complex(line_tree(2), use_cache=False)
    poly = build_polytope(cx)
    verts = set(poly.vertices)
    expected = {(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)}
    secs = time.perf_counter() - t0
    ok = cx.f_vector == (1, 6, 6) and cx.h_vector == (1, 4, 1) and verts == expected and secs < 1
    return CheckResult(1, "two-edge line tree: f, h and hexagon", ok, secs, f"f={cx.f_vector} h={cx.h_vector}")


def check_facet_formula(max_n: int = 9) -> CheckResult:
    t0 = time.perf_counter()
    bad = []
    for n, t in _trees(min(6, max_n)):
        cx = build_complex(t)
        if cx.f_vector != formula_f(n) or len(cx.facets) != comb(2 * n, n) or sphere_checks(cx):
            bad.append((n, t.cyclic_order))
    small = time.perf_counter() - t0
    t1 = time.perf_counter()
    star_n = min(9, max_n)
    star_ok = True
    if star_n > 6:
        cx = build_complex(star_tree(star_n))
        star_ok = cx.f_vector == formula_f(star_n) and len(cx.facets) == comb(2 * star_n, star_n)
    big = time.perf_counter() - t1
    ok = not bad and star_ok and small < 60 and big < 120
    return CheckResult(
        2,
        "f-vector formula for every tree n<=6, star up to n=9",
        ok,
        small + big,
        f"all trees {small:.1f}s, star n={star_n} {big:.1f}s, mismatches={bad}",
    )


def check_invariance(max_n: int = 9) -> CheckResult:
    t0 = time.perf_counter()
    bad = []
    for n in range(1, min(6, max_n) + 1):
        fs = {build_complex(t).f_vector for t in enumerate_plane_trees(n)}
        if len(fs) != 1:
            bad.append(n)
    return CheckResult(3, "equal f-vectors for equal edge counts", not bad, time.perf_counter() - t0, f"differing n: {bad}")


def check_halfspaces(max_n: int = 9) -> CheckResult:
    t0 = time.perf_counter()
    bad = []
    cases = 0
    for n, t in _trees(min(5, max_n)):
        cx = build_complex(t)
        for i in t.edge_ids:
            for j, (le, ge, _) in enumerate(halfspace_counts(cx, i)):
                cases += 1
                if le != ge:
                    bad.append((n, i, j))
    return CheckResult(4, "half-space face counts agree", not bad, time.perf_counter() - t0, f"{cases} cases, failures={bad[:5]}")


def check_unimodular(max_n: int = 9) -> CheckResult:
    t0 = time.perf_counter()
    bad = 0
    facets = 0
    for n, t in _trees(min(7, max_n)):
        cx = build_complex(t)
        for f in cx.facets:
            facets += 1
            m = [[cx.walks[k].sign(r) for k in f] for r in t.edge_ids]
            if abs(det(m)) != 1:
                bad += 1
    return CheckResult(5, "every facet matrix is unimodular", bad == 0, time.perf_counter() - t0, f"{facets} facets, {bad} bad")


def check_symmetry(max_n: int = 9) -> CheckResult:
    t0 = time.perf_counter()
    bad = []
    for n, t in _trees(min(4, max_n)):
        if not check_central_symmetry(build_polytope(build_complex(t))):
            bad.append((n, t.cyclic_order))
    return CheckResult(6, "central symmetry and half-space lattice counts", not bad, time.perf_counter() - t0, f"failures={bad}")


def check_convex_ehrhart(max_n: int = 9) -> CheckResult:
    t0 = time.perf_counter()
    details = []
    ok = True
    for n in range(2, min(4, max_n) + 1):
        ts = time.perf_counter()
        for t in enumerate_plane_trees(n):
            poly = build_polytope(build_complex(t))
            hs = h_star(ehrhart_counts(poly, n), n)
            hv = build_complex(t).h_vector
            convex = check_convexity(poly)
            if not (convex and hs == hv == formula_h(n)):
                ok = False
                details.append(f"n={n} convex={convex} h*={hs} h={hv}")
        took = time.perf_counter() - ts
        if n == 4 and took > 300:
            ok = False
            details.append(f"n=4 took {took:.0f}s")
        details.append(f"n={n} h*={formula_h(n)} {took:.1f}s")
    return CheckResult(7, "convexity certificate and h* = h = C(n,j)^2", ok, time.perf_counter() - t0, "; ".join(details))


def check_kauer(max_n: int = 9) -> CheckResult:
    t0 = time.perf_counter()
    bad = []
    for n, t in _trees(min(4, max_n)):
        for i in t.edge_ids:
            lemma = verify_lemma_num(t, i)
            end = verify_end_iso(t, i)
            if not lemma or not end:
                bad.append((n, t.cyclic_order, i, lemma, end))
    return CheckResult(8, "Kauer move: count transfer and endomorphism algebra", not bad, time.perf_counter() - t0, f"failures={bad[:3]}")


def check_filter(max_n: int = 9) -> CheckResult:
    t0 = time.perf_counter()
    violations = 0
    pairs = 0
    beyond = 0
    for n, t in _trees(min(6, max_n)):
        rep = filter_report(HomOracle(BrauerTreeAlgebra(t)), enumerate_signed_walks(t))
        violations += len(rep.violations)
        pairs += rep.pairs
        beyond += rep.unknown_incompatible
    return CheckResult(
        9,
        "sign filter never contradicts the Hom oracle",
        violations == 0,
        time.perf_counter() - t0,
        f"{pairs} pairs, {violations} violations, {beyond} incompatible pairs passed to the oracle",
    )


def check_poset(max_n: int = 9) -> CheckResult:
    t0 = time.perf_counter()
    bad = []
    for n, t in _trees(min(4, max_n)):
        p = build_poset(build_complex(t))
        if (
            p.sources() != [p.top]
            or p.sinks() != [p.bottom]
            or set(p.degrees()) != {n}
            or not p.is_connected()
            or order_problems(p)
        ):
            bad.append((n, t.cyclic_order))
    return CheckResult(10, "tilt poset: source, sink, regularity, order axioms", not bad, time.perf_counter() - t0, f"failures={bad}")


def check_bicambrian(max_n: int = 9) -> CheckResult:
    t0 = time.perf_counter()
    counts = {}
    iso = {}
    closure_secs = 0.0
    for n in range(2, min(4, max_n) + 1):
        ts = time.perf_counter()
        lat = weak_order(n)
        cong = bicambrian_congruence(lat)
        if n == 4:
            closure_secs = time.perf_counter() - ts
        counts[n] = cong.num_classes
        if n <= 3:
            tilt = build_poset(build_complex(line_tree(n))).as_poset()
            iso[n] = iso_check(quotient_poset(lat, cong), tilt)
    ok = all(c == comb(2 * n, n) for n, c in counts.items()) and all(iso.values()) and closure_secs < 120
    return CheckResult(11, "biCambrian classes and quotient poset", ok, time.perf_counter() - t0, f"classes={counts} iso={iso}")


CHECKS: List[Callable[[int], CheckResult]] = [
    check_example_n2,
    check_facet_formula,
    check_invariance,
    check_halfspaces,
    check_unimodular,
    check_symmetry,
    check_convex_ehrhart,
    check_kauer,
    check_filter,
    check_poset,
    check_bicambrian,
]


def run_all(max_n: int = 9, only: Optional[List[int]] = None, echo: Optional[Callable[[str], None]] = None) -> List[CheckResult]:
    results = []
    for k, check in enumerate(CHECKS, start=1):
        if only and k not in only:
            continue
        r = check(max_n)
        if echo:
            echo(r.line())
        results.append(r)
    return results
