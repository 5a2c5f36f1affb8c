import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brauertilt.algebra import BrauerTreeAlgebra
from brauertilt.errors import AlgebraMismatch, NotTilting
from brauertilt.homotopy import (
    Compat,
    HomOracle,
    compatible_fast,
    direct_sum,
    filter_report,
    hom_dim,
    is_pretilting,
    is_pretilting_pair,
    order_ge,
    stalk_complex,
)
from brauertilt.tree import enumerate_plane_trees, line_tree, star_tree
from brauertilt.walks import SignedWalk, enumerate_signed_walks, stalk, to_complex
from oracles import PathAlgebra, dense_hom_dim, walk_complex


def oracle_for(tree):
    return HomOracle(BrauerTreeAlgebra(tree))


def test_stalk_examples_in_one_edge_algebra():
    alg = BrauerTreeAlgebra(line_tree(1))
    X = stalk_complex(alg, 1, 0)
    Y = stalk_complex(alg, 1, -1)
    assert hom_dim(X, X, 1) == 0
    assert hom_dim(Y, X, 1) == 2
    assert not is_pretilting_pair(X, Y)
    assert is_pretilting(X) and is_pretilting(Y)


def test_algebra_itself_is_tilting():
    alg = BrauerTreeAlgebra(line_tree(2))
    P1, P2 = stalk_complex(alg, 1), stalk_complex(alg, 2)
    assert is_pretilting_pair(P1, P2)
    assert is_pretilting(direct_sum([P1, P2]))


def test_two_edge_line_has_six_compatible_pairs():
    t = line_tree(2)
    o = oracle_for(t)
    walks = enumerate_signed_walks(t)
    pairs = [(a, b) for k, a in enumerate(walks) for b in walks[k + 1 :] if o.pretilting_pair(a, b)]
    assert len(pairs) == 6


def test_mixing_algebras_is_an_error():
    a1 = BrauerTreeAlgebra(line_tree(2))
    a2 = BrauerTreeAlgebra(line_tree(2))
    with pytest.raises(AlgebraMismatch):
        hom_dim(stalk_complex(a1, 1), stalk_complex(a2, 1), 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_agrees_with_dense_path_oracle(n):
    for t in enumerate_plane_trees(n):
        paths = PathAlgebra(t)
        o = oracle_for(t)
        walks = enumerate_signed_walks(t)
        for a in walks:
            for b in walks:
                for s in (-1, 0, 1):
                    assert o.hom(a, b, s) == dense_hom_dim(paths, walk_complex(paths, a), walk_complex(paths, b), s)


def test_agrees_with_dense_oracle_on_sampled_n4_pairs():
    rng = random.Random(7)
    for t in enumerate_plane_trees(4):
        paths = PathAlgebra(t)
        o = oracle_for(t)
        walks = enumerate_signed_walks(t)
        for _ in range(40):
            a, b = rng.choice(walks), rng.choice(walks)
            s = rng.choice((-1, 0, 1))
            assert o.hom(a, b, s) == dense_hom_dim(paths, walk_complex(paths, a), walk_complex(paths, b), s)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_serre_symmetry(n):
    for t in enumerate_plane_trees(n):
        o = oracle_for(t)
        walks = enumerate_signed_walks(t)
        for a in walks:
            for b in walks:
                assert o.hom(a, b, 1) == o.hom(b, a, -1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_every_walk_complex_is_pretilting(n):
    for t in enumerate_plane_trees(n):
        o = oracle_for(t)
        for w in enumerate_signed_walks(t):
            assert o.hom(w, w, 1) == 0 and o.hom(w, w, -1) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=2, max_value=5), st.data())
def test_dimensions_ignore_summand_order(n, data):
    t = data.draw(st.sampled_from(enumerate_plane_trees(n)))
    alg = BrauerTreeAlgebra(t)
    walks = enumerate_signed_walks(t)
    parts = data.draw(st.lists(st.sampled_from(walks), min_size=1, max_size=3, unique=True))
    X = direct_sum([to_complex(w, alg) for w in parts])
    Y = to_complex(data.draw(st.sampled_from(walks)), alg)
    pm = data.draw(st.permutations(range(len(X.minus))))
    pz = data.draw(st.permutations(range(len(X.zero))))
    Xs = X.shuffled(pm, pz)
    for s in (-1, 0, 1):
        assert hom_dim(X, Y, s) == hom_dim(Xs, Y, s)
        assert hom_dim(Y, X, s) == hom_dim(Y, Xs, s)


def test_direct_sum_dimension_is_additive():
    t = star_tree(3)
    alg = BrauerTreeAlgebra(t)
    walks = enumerate_signed_walks(t)
    for a in walks[:6]:
        for b in walks[6:]:
            X = direct_sum([to_complex(a, alg), to_complex(b, alg)])
            Z = to_complex(walks[0], alg)
            for s in (-1, 0, 1):
                assert hom_dim(X, Z, s) == hom_dim(to_complex(a, alg), Z, s) + hom_dim(to_complex(b, alg), Z, s)


def test_filter_examples():
    t = line_tree(3)
    # shared edge with opposite signs
    assert compatible_fast(t, SignedWalk((1, 2), (1, -1)), SignedWalk((2,), (1,))) is Compat.INCOMPATIBLE
    # disjoint walks meeting end to end with different signs
    assert compatible_fast(t, SignedWalk((1,), (1,)), SignedWalk((2, 3), (-1, 1))) is Compat.INCOMPATIBLE
    w = SignedWalk((1, 2), (1, -1))
    assert compatible_fast(t, w, w) is Compat.UNKNOWN
    assert oracle_for(t).pretilting_pair(w, w)


def test_filter_does_not_fire_through_a_walk():
    # [+1] and [-2 +3] on the 3-star: edge 1 meets edge 2 with opposite sign,
    # but the walk 2-3 passes through the shared hub and the pair is compatible
    t = star_tree(3)
    a, b = stalk(1, 1), SignedWalk((2, 3), (-1, 1))
    assert compatible_fast(t, a, b) is Compat.UNKNOWN
    assert oracle_for(t).pretilting_pair(a, b)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_filter_is_sound(n):
    for t in enumerate_plane_trees(n):
        rep = filter_report(oracle_for(t), enumerate_signed_walks(t))
        assert rep.violations == []
        assert rep.filtered + rep.unknown_compatible + rep.unknown_incompatible == rep.pairs


def test_order_on_two_edge_line():
    t = line_tree(2)
    o = oracle_for(t)
    A = [stalk(1), stalk(2)]
    A1 = [stalk(1, -1), stalk(2, -1)]
    T = [stalk(2), SignedWalk((1, 2), (-1, 1))]
    assert order_ge(o, A, T) and order_ge(o, T, A1) and order_ge(o, A, A1)
    assert not order_ge(o, A1, A)
    with pytest.raises(NotTilting):
        order_ge(o, [stalk(1), stalk(1, -1)], A)
    with pytest.raises(NotTilting):
        order_ge(o, [stalk(1)], A)
