import json

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brauertilt.errors import InvalidTree, OutOfRange, ParseError, UnknownEdge
from brauertilt.tree import (
    BrauerTree,
    canonical_code,
    canonical_form,
    checked,
    enumerate_plane_trees,
    is_isomorphic,
    kauer_move,
    line_tree,
    load_tree,
    parse_tree,
    serialize_tree,
    star_tree,
    tree_from_embedding,
    validate,
)
from oracles import all_cyclic_assignments, brute_force_isomorphic, plane_trees_brute

DOCS = __import__("pathlib").Path(__file__).resolve().parent.parent / "docs" / "trees"


def kinds(tree):
    return {i.kind for i in validate(tree)}


def test_builtin_trees_are_valid():
    for n in range(1, 8):
        assert validate(star_tree(n)) == []
        assert validate(line_tree(n)) == []
    assert star_tree(4).degree(0) == 4
    assert line_tree(3).path_edges(0, 3) == (1, 2, 3)


def test_rotation_of_cyclic_order_is_the_same_tree():
    t = star_tree(3)
    assert t.with_order({0: (2, 3, 1), 1: (1,), 2: (2,), 3: (3,)}) == t
    assert t.with_order({0: (1, 3, 2), 1: (1,), 2: (2,), 3: (3,)}) != t


@pytest.mark.parametrize(
    "edges,order,kind",
    [
        ({1: (0, 1), 2: (1, 2), 3: (2, 0)}, {0: (1, 3), 1: (1, 2), 2: (2, 3)}, "CyclicGraph"),
        ({1: (0, 1), 2: (2, 3)}, {0: (1,), 1: (1,), 2: (2,), 3: (2,)}, "Disconnected"),
        ({1: (0, 1), 2: (1, 2)}, {0: (1,), 1: (1,), 2: (2,)}, "BadCyclicOrder"),
        ({1: (0, 0)}, {0: (1, 1)}, "Loop"),
    ],
)
def test_validation_reports_each_kind(edges, order, kind):
    verts = sorted({v for ab in edges.values() for v in ab})
    t = BrauerTree(tuple(verts), edges, order)
    assert kind in kinds(t)
    with pytest.raises(InvalidTree):
        checked(t)


def test_missing_exceptional_and_multiplicity():
    t = BrauerTree((0, 1), {1: (0, 1)}, {0: (1,), 1: (1,)}, multiplicity=0, exceptional=7)
    assert {"MissingExceptional", "BadMultiplicity"} <= kinds(t)


def test_enumeration_counts():
    counts = [len(enumerate_plane_trees(n)) for n in range(1, 9)]
    assert counts == [1, 1, 2, 3, 6, 14, 34, 95]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_matches_brute_force(n):
    fast = enumerate_plane_trees(n)
    slow = plane_trees_brute(n)
    assert len(fast) == len(slow)
    for t in slow:
        assert sum(brute_force_isomorphic(t, f) for f in fast) == 1


def test_enumeration_range():
    with pytest.raises(OutOfRange):
        enumerate_plane_trees(0)
    with pytest.raises(OutOfRange):
        enumerate_plane_trees(9)


def test_canonical_form_agrees_with_brute_force():
    g = nx.Graph([(0, 1), (1, 2), (1, 3), (3, 4)])
    embeddings = list(all_cyclic_assignments(g))
    for a in embeddings:
        for b in embeddings:
            assert is_isomorphic(a, b) == brute_force_isomorphic(a, b)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.data())
def test_canonical_code_ignores_relabelling(n, data):
    t = data.draw(st.sampled_from(enumerate_plane_trees(n)))
    vperm = data.draw(st.permutations(list(t.vertices)))
    eperm = data.draw(st.permutations(t.edge_ids))
    vmap = dict(zip(t.vertices, vperm))
    emap = dict(zip(t.edge_ids, eperm))
    relabelled = BrauerTree(
        tuple(sorted(vmap.values())),
        {emap[e]: (vmap[a], vmap[b]) for e, (a, b) in t.edges.items()},
        {vmap[v]: tuple(emap[e] for e in o) for v, o in t.cyclic_order.items()},
        exceptional=vmap[t.exceptional],
    )
    assert canonical_code(relabelled) == canonical_code(t)
    assert canonical_form(relabelled) == canonical_form(t)


def test_embedding_reads_counterclockwise_order():
    coords = {0: (0.0, 0.0), 1: (1.0, 0.0), 2: (0.0, 1.0), 3: (-1.0, 0.0)}
    t = tree_from_embedding(coords, {1: (0, 1), 2: (0, 2), 3: (0, 3)})
    assert t.cyclic_order[0] == (1, 2, 3)
    flipped = tree_from_embedding({**coords, 2: (0.0, -1.0)}, {1: (0, 1), 2: (0, 2), 3: (0, 3)})
    assert flipped.cyclic_order[0] == (1, 3, 2)


def test_kauer_move_on_star_and_line():
    moved = kauer_move(star_tree(3), 1)
    # edge 1 slides along edge 2 to the leaf of edge 2
    assert set(moved.ends(1)) == {1, 2}
    assert moved.cyclic_order[2] == (1, 2)
    assert moved.cyclic_order[0] == (2, 3)
    line = kauer_move(line_tree(3), 2)
    assert set(line.ends(2)) == {0, 3}
    assert validate(line) == []


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_kauer_move_preserves_validity(n):
    for t in enumerate_plane_trees(n):
        for i in t.edge_ids:
            m = kauer_move(t, i)
            assert validate(m) == [] and m.n == n
            assert validate(kauer_move(t, i, insert_after=False)) == []


def test_kauer_move_unknown_edge():
    with pytest.raises(UnknownEdge):
        kauer_move(star_tree(2), 5)


@pytest.mark.parametrize("name", ["path2.json", "star3.json", "y4.json"])
def test_fixture_round_trip_is_byte_identical(name):
    text = (DOCS / name).read_text()
    tree = parse_tree(text)
    assert serialize_tree(tree) == text
    assert load_tree(DOCS / name) == tree


def test_serialise_round_trip_all_small_trees():
    for n in range(1, 6):
        for t in enumerate_plane_trees(n):
            assert parse_tree(serialize_tree(t)) == t


def test_parse_errors_carry_location():
    with pytest.raises(ParseError):
        parse_tree("{not json")
    doc = json.loads(serialize_tree(star_tree(2)))
    doc["edges"][1]["ends"] = "x"
    with pytest.raises(ParseError) as err:
        parse_tree(json.dumps(doc))
    assert "edges" in str(err.value)
    doc = json.loads(serialize_tree(star_tree(2)))
    doc["cyclic_order"]["0"] = [1]
    with pytest.raises(ParseError, match="BadCyclicOrder"):
        parse_tree(json.dumps(doc))
