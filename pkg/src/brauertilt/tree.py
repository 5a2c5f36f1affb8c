"""Brauer trees: plane trees with a multiplicity and an exceptional vertex.

A tree is stored as a vertex list, an edge map ``id -> (u, v)`` and, for every
vertex, the counterclockwise cyclic order of its incident edges.  Edge ids are
``1..n``.  Cyclic orders are normalised to start at their smallest edge id, so
two rotations of the same order compare equal.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .errors import InvalidTree, OutOfRange, ParseError, UnknownEdge

MAX_ENUMERATION_EDGES = 8


class TreeIssue(NamedTuple):
    kind: str
    message: str


def _rotate_min(order: Sequence[int]) -> Tuple[int, ...]:
    order = tuple(order)
    if not order:
        return order
    k = order.index(min(order))
    return order[k:] + order[:k]


@dataclass(frozen=True)
class BrauerTree:
    vertices: Tuple[int, ...]
    edges: Mapping[int, Tuple[int, int]]
    cyclic_order: Mapping[int, Tuple[int, ...]]
    multiplicity: int = 1
    exceptional: int = 0

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(
            self, "edges", {int(e): (ends[0], ends[1]) for e, ends in sorted(self.edges.items())}
        )
        object.__setattr__(
            self,
            "cyclic_order",
            {v: _rotate_min(order) for v, order in sorted(self.cyclic_order.items())},
        )

    @property
    def n(self) -> int:
        return len(self.edges)

    @property
    def edge_ids(self) -> List[int]:
        return sorted(self.edges)

    def ends(self, edge: int) -> Tuple[int, int]:
        try:
            return self.edges[edge]
        except KeyError:
            raise UnknownEdge(f"edge {edge} not in tree") from None

    def degree(self, v: int) -> int:
        return len(self.cyclic_order[v])

    def other_end(self, edge: int, v: int) -> int:
        a, b = self.ends(edge)
        return b if v == a else a

    def sigma(self, v: int, edge: int, k: int = 1) -> int:
        """The edge ``k`` steps after ``edge`` in the cyclic order at ``v``."""
        order = self.cyclic_order[v]
        return order[(order.index(edge) + k) % len(order)]

    def steps(self, v: int, a: int, b: int) -> int:
        """Smallest ``k >= 0`` with ``sigma_v^k(a) == b``."""
        order = self.cyclic_order[v]
        return (order.index(b) - order.index(a)) % len(order)

    def shared_vertex(self, a: int, b: int) -> Optional[int]:
        if a == b:
            return None
        common = set(self.ends(a)) & set(self.ends(b))
        return common.pop() if common else None

    def adjacent(self, a: int, b: int) -> bool:
        return self.shared_vertex(a, b) is not None

    def neighbours(self) -> Dict[int, List[Tuple[int, int]]]:
        """vertex -> list of (edge, other endpoint)."""
        nb: Dict[int, List[Tuple[int, int]]] = {v: [] for v in self.vertices}
        for e, (a, b) in self.edges.items():
            nb[a].append((e, b))
            nb[b].append((e, a))
        return nb

    def path_edges(self, u: int, v: int) -> Tuple[int, ...]:
        """Edges of the unique walk from ``u`` to ``v``, in order."""
        nb = self.neighbours()
        parent: Dict[int, Tuple[int, int]] = {u: (-1, -1)}
        queue = deque([u])
        while queue:
            x = queue.popleft()
            if x == v:
                break
            for e, y in nb[x]:
                if y not in parent:
                    parent[y] = (x, e)
                    queue.append(y)
        out = []
        x = v
        while x != u:
            x, e = parent[x]
            out.append(e)
        return tuple(reversed(out))

    def key(self):
        return (
            self.vertices,
            tuple(self.edges.items()),
            tuple(self.cyclic_order.items()),
            self.multiplicity,
            self.exceptional,
        )

    def __hash__(self):
        return hash(self.key())

    def with_order(self, cyclic_order: Mapping[int, Sequence[int]]) -> "BrauerTree":
        return BrauerTree(self.vertices, self.edges, dict(cyclic_order), self.multiplicity, self.exceptional)

    def __repr__(self):
        es = ", ".join(f"{e}:{a}-{b}" for e, (a, b) in self.edges.items())
        return f"BrauerTree(n={self.n}, edges=[{es}], m={self.multiplicity})"


def validate(tree: BrauerTree) -> List[TreeIssue]:
    """All violated invariants; the tree is valid iff the list is empty."""
    issues: List[TreeIssue] = []
    vs = set(tree.vertices)
    if len(vs) != len(tree.vertices):
        issues.append(TreeIssue("BadVertices", "duplicate vertex ids"))
    incident: Dict[int, List[int]] = {v: [] for v in vs}
    for e, (a, b) in tree.edges.items():
        if a not in vs or b not in vs:
            issues.append(TreeIssue("BadEdge", f"edge {e} has an endpoint outside the vertex set"))
            continue
        if a == b:
            issues.append(TreeIssue("Loop", f"edge {e} is a loop"))
            continue
        incident[a].append(e)
        incident[b].append(e)
    if tree.edges and sorted(tree.edges) != list(range(1, tree.n + 1)):
        issues.append(TreeIssue("BadEdgeIds", "edge ids must be 1..n"))

    # connectivity / acyclicity by union-find
    parent = {v: v for v in vs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cyclic = False
    for e, (a, b) in tree.edges.items():
        if a not in vs or b not in vs or a == b:
            continue
        ra, rb = find(a), find(b)
        if ra == rb:
            cyclic = True
        else:
            parent[ra] = rb
    if cyclic:
        issues.append(TreeIssue("CyclicGraph", "the underlying graph contains a cycle"))
    if vs and len({find(v) for v in vs}) > 1:
        issues.append(TreeIssue("Disconnected", "the underlying graph is not connected"))
    if not tree.edges:
        issues.append(TreeIssue("Empty", "a Brauer tree needs at least one edge"))

    for v in vs:
        order = tree.cyclic_order.get(v)
        if order is None:
            issues.append(TreeIssue("BadCyclicOrder", f"vertex {v} has no cyclic order"))
        elif sorted(order) != sorted(incident[v]) or len(set(order)) != len(order):
            issues.append(
                TreeIssue("BadCyclicOrder", f"cyclic order at {v} is {list(order)}, incident edges {sorted(incident[v])}")
            )
    for v in tree.cyclic_order:
        if v not in vs:
            issues.append(TreeIssue("BadCyclicOrder", f"cyclic order given for unknown vertex {v}"))
    if tree.exceptional not in vs:
        issues.append(TreeIssue("MissingExceptional", f"exceptional vertex {tree.exceptional} not in tree"))
    if not isinstance(tree.multiplicity, int) or tree.multiplicity < 1:
        issues.append(TreeIssue("BadMultiplicity", "multiplicity must be an integer >= 1"))
    return issues


def checked(tree: BrauerTree) -> BrauerTree:
    issues = validate(tree)
    if issues:
        raise InvalidTree(issues)
    return tree


# --- constructors ----------------------------------------------------------------


def star_tree(n: int) -> BrauerTree:
    """Hub 0 with leaves 1..n; edge i joins 0 and i, ordered 1, 2, ..., n at the hub."""
    edges = {i: (0, i) for i in range(1, n + 1)}
    order = {0: tuple(range(1, n + 1))}
    order.update({i: (i,) for i in range(1, n + 1)})
    return checked(BrauerTree(tuple(range(n + 1)), edges, order))


def line_tree(n: int) -> BrauerTree:
    """Vertices 0..n with edge i joining i-1 and i."""
    edges = {i: (i - 1, i) for i in range(1, n + 1)}
    order = {0: (1,), n: (n,)}
    order.update({v: (v, v + 1) for v in range(1, n)})
    return checked(BrauerTree(tuple(range(n + 1)), edges, order))


def tree_from_embedding(
    coords: Mapping[int, Tuple[float, float]],
    edges: Mapping[int, Tuple[int, int]],
    multiplicity: int = 1,
    exceptional: Optional[int] = None,
) -> BrauerTree:
    """Plane tree from vertex positions; cyclic orders are read off counterclockwise."""
    order = {}
    for v, (x, y) in coords.items():
        inc = []
        for e, (a, b) in edges.items():
            if v in (a, b):
                w = b if v == a else a
                inc.append((math.atan2(coords[w][1] - y, coords[w][0] - x), e))
        order[v] = tuple(e for _, e in sorted(inc))
    if exceptional is None:
        exceptional = min(coords)
    return checked(BrauerTree(tuple(sorted(coords)), dict(edges), order, multiplicity, exceptional))


# --- canonical form --------------------------------------------------------------


def _encode(tree: BrauerTree, root: int, start: int) -> Tuple[str, List[int], List[int]]:
    """Bracket code of the traversal from dart (root, start) plus visit orders."""
    vorder = [root]
    eorder: List[int] = []
    parts: List[str] = []
    order = tree.cyclic_order[root]
    k = order.index(start)
    # iterative DFS; stack holds (vertex, remaining child edges)
    stack = [(root, list(order[k:] + order[:k]))]
    while stack:
        v, todo = stack[-1]
        if not todo:
            stack.pop()
            if stack:
                parts.append(")")
            continue
        e = todo.pop(0)
        w = tree.other_end(e, v)
        parts.append("(")
        vorder.append(w)
        eorder.append(e)
        o = tree.cyclic_order[w]
        j = o.index(e)
        stack.append((w, list(o[j + 1 :] + o[:j])))
    return "".join(parts), vorder, eorder


def canonical_code(tree: BrauerTree) -> str:
    return _canonical(tree)[0]


def _canonical(tree: BrauerTree):
    roots = tree.vertices if tree.multiplicity == 1 else (tree.exceptional,)
    best = None
    for v in roots:
        for e in tree.cyclic_order[v]:
            code, vorder, eorder = _encode(tree, v, e)
            if best is None or code < best[0]:
                best = (code, vorder, eorder)
    return best


def canonical_form(tree: BrauerTree) -> BrauerTree:
    """Relabel vertices 0..n and edges 1..n in traversal order of the minimal dart.

    Isomorphism here preserves incidence and cyclic orders (rotations only).
    With multiplicity 1 the exceptional vertex is irrelevant and set to 0;
    otherwise the traversal is rooted at it.
    """
    code, vorder, eorder = _canonical(tree)
    vmap = {v: i for i, v in enumerate(vorder)}
    emap = {e: i + 1 for i, e in enumerate(eorder)}
    edges = {emap[e]: tuple(sorted((vmap[a], vmap[b]))) for e, (a, b) in tree.edges.items()}
    order = {vmap[v]: tuple(emap[e] for e in o) for v, o in tree.cyclic_order.items()}
    exc = 0 if tree.multiplicity == 1 else vmap[tree.exceptional]
    return BrauerTree(tuple(range(len(vorder))), edges, order, tree.multiplicity, exc)


def is_isomorphic(t1: BrauerTree, t2: BrauerTree) -> bool:
    return t1.multiplicity == t2.multiplicity and canonical_code(t1) == canonical_code(t2)


# --- enumeration -----------------------------------------------------------------


def _ordered_trees(n: int):
    """All rooted ordered trees with n edges as Dyck words."""
    def rec(prefix, opened, closed):
        if opened == n and closed == n:
            yield prefix
            return
        if opened < n:
            yield from rec(prefix + "(", opened + 1, closed)
        if closed < opened:
            yield from rec(prefix + ")", opened, closed + 1)

    yield from rec("", 0, 0)


def _tree_from_dyck(word: str) -> BrauerTree:
    edges: Dict[int, Tuple[int, int]] = {}
    children: Dict[int, List[int]] = {0: []}
    up: Dict[int, int] = {}
    stack = [0]
    nv = 1
    for ch in word:
        if ch == "(":
            w = nv
            nv += 1
            e = len(edges) + 1
            edges[e] = (stack[-1], w)
            children[stack[-1]].append(e)
            children[w] = []
            up[w] = e
            stack.append(w)
        else:
            stack.pop()
    order = {}
    for v in range(nv):
        order[v] = tuple(([up[v]] if v in up else []) + children[v])
    return BrauerTree(tuple(range(nv)), edges, order)


def enumerate_plane_trees(n: int) -> List[BrauerTree]:
    """All multiplicity-1 Brauer trees with ``n`` edges up to isomorphism, canonical."""
    if not 1 <= n <= MAX_ENUMERATION_EDGES:
        raise OutOfRange(f"n must be in 1..{MAX_ENUMERATION_EDGES}, got {n}")
    seen: Dict[str, BrauerTree] = {}
    for word in _ordered_trees(n):
        t = canonical_form(_tree_from_dyck(word))
        code = canonical_code(t)
        seen.setdefault(code, t)
    return [seen[c] for c in sorted(seen)]


# --- Kauer move ------------------------------------------------------------------


def kauer_move(tree: BrauerTree, i: int, insert_after: bool = True) -> BrauerTree:
    """Re-attach edge ``i``: each non-leaf end slides along the next edge ``j = sigma_x(i)``
    to the far end ``y`` of ``j`` and ``i`` is inserted right after ``j`` at ``y``.

    ``insert_after=False`` inserts before ``j`` instead; that variant is not the
    Kauer move and exists only as a control for tests.
    """
    if i not in tree.edges:
        raise UnknownEdge(f"edge {i} is not in the tree")
    ends = tree.ends(i)
    order = {v: list(o) for v, o in tree.cyclic_order.items()}
    new_ends = []
    for x in ends:
        j = tree.sigma(x, i)
        if j == i:
            new_ends.append(x)
            continue
        y = tree.other_end(j, x)
        order[x].remove(i)
        pos = order[y].index(j)
        order[y].insert(pos + 1 if insert_after else pos, i)
        new_ends.append(y)
    edges = dict(tree.edges)
    edges[i] = (new_ends[0], new_ends[1])
    moved = BrauerTree(tree.vertices, edges, order, tree.multiplicity, tree.exceptional)
    issues = validate(moved)
    assert not issues, f"MoveCreatesCycle: {issues}"
    return moved


# --- serialisation ---------------------------------------------------------------


def to_dict(tree: BrauerTree) -> dict:
    return {
        "vertices": list(tree.vertices),
        "edges": [{"id": e, "ends": list(ab)} for e, ab in tree.edges.items()],
        "cyclic_order": {str(v): list(o) for v, o in tree.cyclic_order.items()},
        "multiplicity": tree.multiplicity,
        "exceptional": tree.exceptional,
    }


def serialize_tree(tree: BrauerTree) -> str:
    d = to_dict(tree)
    lines = ["{"]
    lines.append(f'  "vertices": {json.dumps(d["vertices"])},')
    lines.append('  "edges": [')
    es = [f'    {{"id": {e["id"]}, "ends": {json.dumps(e["ends"])}}}' for e in d["edges"]]
    lines.append(",\n".join(es))
    lines.append("  ],")
    lines.append('  "cyclic_order": {')
    cs = [f'    "{v}": {json.dumps(o)}' for v, o in d["cyclic_order"].items()]
    lines.append(",\n".join(cs))
    lines.append("  },")
    lines.append(f'  "multiplicity": {d["multiplicity"]},')
    lines.append(f'  "exceptional": {d["exceptional"]}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _vertex_key(key: str, where: str):
    try:
        return int(key)
    except ValueError:
        raise ParseError(f"vertex id {key!r} is not an integer", where) from None


def parse_tree(text: str) -> BrauerTree:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from None
    if not isinstance(d, dict):
        raise ParseError("top level must be an object", "$")
    for key in ("vertices", "edges", "cyclic_order"):
        if key not in d:
            raise ParseError(f"missing key {key!r}", "$")
    vertices = d["vertices"]
    if not isinstance(vertices, list) or not all(isinstance(v, int) for v in vertices):
        raise ParseError("vertices must be a list of integers", "$.vertices")
    edges = {}
    for k, e in enumerate(d["edges"]):
        where = f"$.edges[{k}]"
        if not isinstance(e, dict) or "id" not in e or "ends" not in e:
            raise ParseError("edge needs 'id' and 'ends'", where)
        ends = e["ends"]
        if not isinstance(ends, list) or len(ends) != 2 or not all(isinstance(v, int) for v in ends):
            raise ParseError("'ends' must be two vertex ids", where + ".ends")
        if e["id"] in edges:
            raise ParseError(f"duplicate edge id {e['id']}", where)
        edges[e["id"]] = tuple(ends)
    co = d["cyclic_order"]
    if not isinstance(co, dict):
        raise ParseError("cyclic_order must be an object", "$.cyclic_order")
    order = {}
    for key, o in co.items():
        where = f"$.cyclic_order[{key!r}]"
        v = _vertex_key(key, where)
        if not isinstance(o, list) or not all(isinstance(x, int) for x in o):
            raise ParseError("cyclic order must be a list of edge ids", where)
        if len(set(o)) != len(o) or any(x not in edges for x in o):
            raise ParseError(f"malformed cyclic order {o}", where)
        order[v] = tuple(o)
    tree = BrauerTree(
        tuple(vertices), edges, order, d.get("multiplicity", 1), d.get("exceptional", vertices[0] if vertices else 0)
    )
    issues = validate(tree)
    if issues:
        raise ParseError("; ".join(f"{i.kind}: {i.message}" for i in issues), "$")
    return tree


def load_tree(path) -> BrauerTree:
    with open(path, encoding="utf-8") as fh:
        return parse_tree(fh.read())
