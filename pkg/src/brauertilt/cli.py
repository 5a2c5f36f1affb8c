"""Command-line interface: ``brauertilt <command> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Sequence

from .bicambrian import (
    bicambrian_congruence,
    cambrian_congruence,
    quotient_dot,
    quotient_poset,
    weak_order,
)
from .errors import BrauerTiltError, ParseError
from .mutation_poset import build_poset, dot_text, mu_left_A, poset_json
from .polytope import build_polytope, check_central_symmetry, ehrhart_counts, h_star, off_text, to_json
from .simplicial import build_complex, facets_to_json, sphere_checks
from .tree import BrauerTree, canonical_code, enumerate_plane_trees, kauer_move, line_tree, load_tree, serialize_tree, star_tree
from .verify import run_all
from .walks import enumerate_signed_walks, walks_to_csv, walks_to_json

THREADS_ENV = "BRAUERTILT_THREADS"


def parse_tree_spec(spec: str) -> List[BrauerTree]:
    """``star:n``, ``line:n``, ``all:n`` or a path to a tree JSON file."""
    kind, _, arg = spec.partition(":")
    if kind in ("star", "line", "all") and arg:
        try:
            n = int(arg)
        except ValueError:
            raise ParseError(f"edge count {arg!r} is not an integer", spec) from None
        if kind == "star":
            return [star_tree(n)]
        if kind == "line":
            return [line_tree(n)]
        return enumerate_plane_trees(n)
    return [load_tree(spec)]


def _single(spec: str) -> BrauerTree:
    trees = parse_tree_spec(spec)
    if len(trees) != 1:
        raise ParseError("this command takes a single tree", spec)
    return trees[0]


def _emit(text: str, path=None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _vec(v: Sequence[int]) -> str:
    return ",".join(map(str, v))


def cmd_walks(args) -> int:
    tree = _single(args.tree)
    walks = enumerate_signed_walks(tree)
    text = walks_to_csv(walks, tree.n) if args.format == "csv" else walks_to_json(walks, tree.n)
    _emit(text, args.out)
    return 0


def cmd_fvector(args) -> int:
    if args.all_trees is not None:
        trees = enumerate_plane_trees(args.all_trees)
    elif args.tree:
        trees = parse_tree_spec(args.tree)
    else:
        raise ParseError("give --tree or --all-trees")
    rows = []
    for t in trees:
        cx = build_complex(t, threads=args.threads)
        rows.append((t, cx))
    if args.csv:
        n = trees[0].n
        out = ["tree," + ",".join(f"f{j - 1}" for j in range(n + 1)) + "," + ",".join(f"h{j}" for j in range(n + 1))]
        for t, cx in rows:
            out.append(f"{canonical_code(t)}," + _vec(cx.f_vector) + "," + _vec(cx.h_vector))
        sys.stdout.write("\n".join(out) + "\n")
    elif len(rows) == 1:
        cx = rows[0][1]
        print(f"f = {_vec(cx.f_vector)}  h = {_vec(cx.h_vector)}")
    else:
        for t, cx in rows:
            print(f"{canonical_code(t)}  f = {_vec(cx.f_vector)}  h = {_vec(cx.h_vector)}")
    if args.facets:
        _emit(json.dumps([facets_to_json(cx) for _, cx in rows], indent=1) + "\n", args.facets)
    distinct = {cx.f_vector for _, cx in rows}
    if len(rows) > 1:
        summary = "identical f-vectors" if len(distinct) == 1 else f"{len(distinct)} distinct f-vectors"
        print(summary, file=sys.stderr if args.csv else sys.stdout)
    problems = [p for _, cx in rows for p in sphere_checks(cx)]
    for p in problems:
        print(f"sphere check: {p}", file=sys.stderr)
    return 0 if len(distinct) == 1 and not problems else 1


def cmd_polytope(args) -> int:
    tree = _single(args.tree)
    poly = build_polytope(build_complex(tree, threads=args.threads))
    if args.format == "off":
        _emit(off_text(poly), args.out)
    else:
        _emit(to_json(poly), args.out)
    if args.out:
        sym = check_central_symmetry(poly, k_max=1)
        print(f"{len(poly.vertices)} vertices, {len(poly.facets)} unimodular facets, centrally symmetric: {sym}")
    return 0


def cmd_ehrhart(args) -> int:
    tree = _single(args.tree)
    poly = build_polytope(build_complex(tree, threads=args.threads))
    k_max = max(args.kmax, tree.n)
    L = ehrhart_counts(poly, k_max)
    print(f"L = {_vec(L[: args.kmax + 1])}")
    print(f"h* = {_vec(h_star(L, tree.n))}")
    return 0


def cmd_mutate(args) -> int:
    tree = _single(args.tree)
    moved = kauer_move(tree, args.edge)
    walks = mu_left_A(tree, args.edge)
    print("mu_L summands: " + " ".join(str(w) for w in walks), file=sys.stderr)
    _emit(serialize_tree(moved), args.out)
    return 0


def cmd_poset(args) -> int:
    tree = _single(args.tree)
    poset = build_poset(build_complex(tree, threads=args.threads))
    if args.format == "json":
        _emit(json.dumps(poset_json(poset), indent=1) + "\n", args.out)
    else:
        _emit(dot_text(poset), args.out)
    return 0


def cmd_bicambrian(args) -> int:
    lat = weak_order(args.rank)
    camb = cambrian_congruence(lat)
    camb_inv = cambrian_congruence(lat, inverse=True)
    bic = bicambrian_congruence(lat)
    print(f"|W| = {len(lat)}  Cambrian classes = {camb.num_classes},{camb_inv.num_classes}  biCambrian classes = {bic.num_classes}")
    if args.dot:
        _emit(quotient_dot(quotient_poset(lat, bic)), args.dot)
    return 0


def cmd_verify(args) -> int:
    only = None
    if args.suite != "all":
        try:
            only = [int(x) for x in args.suite.split(",")]
        except ValueError:
            raise ParseError(f"suite must be 'all' or a comma list of numbers, got {args.suite!r}") from None
    results = run_all(max_n=args.max_n, only=only, echo=lambda s: print(s, flush=True))
    failed = [r.number for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} passed")
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="brauertilt", description="2-term tilting complexes of Brauer tree algebras")
    p.add_argument("--threads", type=int, default=None, help=f"worker processes (default: ${THREADS_ENV} or 1)")
    p.add_argument("--json-errors", action="store_true", help="report errors as JSON on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("walks", help="list signed walks and g-vectors")
    s.add_argument("--tree", required=True)
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.add_argument("--out")
    s.set_defaults(func=cmd_walks)

    s = sub.add_parser("fvector", help="f- and h-vector of the tilting complex")
    s.add_argument("--tree")
    s.add_argument("--all-trees", type=int, metavar="N")
    s.add_argument("--csv", action="store_true")
    s.add_argument("--facets", metavar="PATH", help="write walks and facets as JSON")
    s.set_defaults(func=cmd_fvector)

    s = sub.add_parser("polytope", help="export the g-polytope")
    s.add_argument("--tree", required=True)
    s.add_argument("--format", choices=["json", "off"], default="json")
    s.add_argument("--out")
    s.set_defaults(func=cmd_polytope)

    s = sub.add_parser("ehrhart", help="lattice-point counts of dilates and h*")
    s.add_argument("--tree", required=True)
    s.add_argument("--kmax", type=int, required=True)
    s.set_defaults(func=cmd_ehrhart)

    s = sub.add_parser("mutate", help="apply a Kauer move")
    s.add_argument("--tree", required=True)
    s.add_argument("--edge", type=int, required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("poset", help="mutation quiver of 2-term tilting complexes")
    s.add_argument("--tree", required=True)
    s.add_argument("--format", choices=["dot", "json"], default="dot")
    s.add_argument("--out")
    s.set_defaults(func=cmd_poset)

    s = sub.add_parser("bicambrian", help="Cambrian and biCambrian congruences of the weak order")
    s.add_argument("--rank", type=int, required=True)
    s.add_argument("--dot", metavar="PATH")
    s.set_defaults(func=cmd_bicambrian)

    s = sub.add_parser("verify", help="run the acceptance checks")
    s.add_argument("--suite", default="all")
    s.add_argument("--max-n", type=int, default=9)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        try:
            args.threads = int(os.environ.get(THREADS_ENV, "1"))
        except ValueError:
            args.threads = 1
    args.threads = max(1, args.threads)
    try:
        return args.func(args)
    except (BrauerTiltError, OSError) as exc:
        if args.json_errors:
            payload = exc.to_dict() if isinstance(exc, BrauerTiltError) else {"error": "IoError", "message": str(exc)}
            print(json.dumps(payload), file=sys.stderr)
        else:
            print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
