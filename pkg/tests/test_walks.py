import csv
import io
import json

import pytest

from brauertilt.tree import enumerate_plane_trees, line_tree, star_tree
from brauertilt.walks import (
    SignedWalk,
    dual,
    enumerate_signed_walks,
    g_vector,
    is_walk_in,
    stalk,
    walks_to_csv,
    walks_to_json,
)

ALL = [t for n in range(1, 7) for t in enumerate_plane_trees(n)]


@pytest.mark.parametrize("tree", ALL)
def test_count_and_distinct_g_vectors(tree):
    walks = enumerate_signed_walks(tree)
    assert len(walks) == tree.n * (tree.n + 1)
    assert len({g_vector(w, tree.n) for w in walks}) == len(walks)
    assert all(is_walk_in(tree, w) for w in walks)


def test_two_edge_line_walks():
    labels = [str(w) for w in enumerate_signed_walks(line_tree(2))]
    assert labels == ["[+1]", "[-1]", "[+2]", "[-2]", "[+1 -2]", "[-1 +2]"]
    gs = {g_vector(w, 2) for w in enumerate_signed_walks(line_tree(2))}
    assert gs == {(1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1)}


def test_sign_alternation_is_enforced():
    with pytest.raises(ValueError):
        SignedWalk((1, 2), (1, 1))
    with pytest.raises(ValueError):
        SignedWalk((), ())
    with pytest.raises(ValueError):
        SignedWalk((1,), (2,))


def test_dual_is_an_involution_on_walks():
    t = star_tree(4)
    walks = set(enumerate_signed_walks(t))
    for w in walks:
        assert dual(dual(w)) == w
        assert dual(w) in walks
        assert g_vector(dual(w), 4) == tuple(-x for x in g_vector(w, 4))


def test_is_walk_in_rejects_non_paths():
    t = star_tree(3)
    assert not is_walk_in(t, SignedWalk((1, 2, 3), (1, -1, 1)))  # revisits the hub
    assert not is_walk_in(t, SignedWalk((1, 4), (1, -1)))
    assert is_walk_in(line_tree(3), SignedWalk((3, 2, 1), (1, -1, 1)))


def test_sign_lookup_and_degrees():
    w = SignedWalk((1, 2, 3), (-1, 1, -1))
    assert w.minus == (1, 3) and w.plus == (2,)
    assert w.sign(2) == 1 and w.sign(4) == 0
    assert stalk(3, -1) == SignedWalk((3,), (-1,))


def test_exports():
    walks = enumerate_signed_walks(line_tree(2))
    rows = json.loads(walks_to_json(walks, 2))
    assert rows[4] == {"edges": [1, 2], "signs": [1, -1], "g": [1, -1]}
    table = list(csv.reader(io.StringIO(walks_to_csv(walks, 2))))
    assert table[0] == ["walk", "signed", "g1", "g2"]
    assert table[5] == ["1-2", "+1 -2", "1", "-1"]
