import itertools
import random

import pytest

from oracles import all_reduced_words, apply, bruhat_subword, word_matrix
from schublocus.errors import EnumerationCapError, NotBelowError, RootSystemMismatch, SimpleIndexError
from schublocus.roots import build_root_system
from schublocus.weyl import (
    bruhat_leq,
    compose,
    enumerate_group,
    from_word,
    identity,
    interval,
    longest_element,
    reflection,
    weyl_group,
)


def test_compose_examples(A2):
    s1, s2 = from_word(A2, [1]), from_word(A2, [2])
    e = identity(A2)
    assert compose(A2, s1, e) == s1
    assert compose(A2, s1, s1) == e
    w = compose(A2, s1, s2)
    assert w.length == 2 and w.word == (1, 2)
    assert w((1, 0)) == (0, 1)
    assert w((0, 1)) == (-1, -1)
    assert e((1, 1)) == (1, 1)


def test_length_and_word_examples(A2, B2):
    e = identity(A2)
    assert e.length == 0 and e.word == ()
    w0 = longest_element(A2)
    assert w0.length == 3 and w0.word == (1, 2, 1)
    assert longest_element(B2).length == 4


def test_reflection_examples(A2, B2):
    assert reflection(A2, (1, 0)) == from_word(A2, [1])
    assert reflection(A2, (1, 1)).word == (1, 2, 1)
    assert reflection(B2, (1, 2)) == from_word(B2, [2, 1, 2])


@pytest.mark.parametrize("name,order", [("A2", 6), ("B2", 8), ("G2", 12), ("A3", 24), ("B3", 48), ("D4", 192), ("F4", 1152)])
def test_group_orders(name, order):
    rs = build_root_system(name)
    els = enumerate_group(rs)
    assert len(els) == order == rs.cartan_type.weyl_order
    assert len(set(els)) == order
    keys = [(w.length, w.word) for w in els]
    assert keys == sorted(keys)


@pytest.mark.parametrize("name", ["A3", "B3", "G2"])
def test_action_matches_matrix_oracle(name):
    rs = build_root_system(name)
    for w in enumerate_group(rs):
        m = word_matrix(rs.cartan, w.word)
        for v in rs.positive_roots:
            assert w(v) == apply(m, v)
        assert w.length == sum(1 for v in rs.positive_roots if any(c < 0 for c in w(v)))
        assert len(w.word) == w.length


def test_shortlex_word_is_minimal(B3):
    for w in enumerate_group(B3):
        assert w.word == min(all_reduced_words(w))


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3"])
def test_bruhat_matches_subword_oracle(name):
    rs = build_root_system(name)
    els = enumerate_group(rs)
    for x, w in itertools.product(els, repeat=2):
        assert bruhat_leq(x, w) == bruhat_subword(x, w), (x, w)


def test_bruhat_lifting_matches_table(B3):
    group = weyl_group(B3)
    memo = B3._cache.pop("group")
    try:
        rng = random.Random(7)
        els = list(group)
        for _ in range(400):
            x, w = rng.choice(els), rng.choice(els)
            assert bruhat_leq(x, w) == group.leq(x, w)
    finally:
        B3._cache["group"] = memo


def test_bruhat_examples(A2):
    e = identity(A2)
    for w in enumerate_group(A2):
        assert bruhat_leq(e, w)
    assert not bruhat_leq(from_word(A2, [1, 2]), from_word(A2, [2, 1]))
    assert bruhat_leq(from_word(A2, [1]), from_word(A2, [2, 1]))


def test_interval_examples(A2):
    w0 = longest_element(A2)
    assert len(interval(A2, identity(A2), w0)) == 6
    assert interval(A2, w0, w0) == [w0]
    with pytest.raises(NotBelowError):
        interval(A2, w0, identity(A2))


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_codim2_intervals_have_two_interior_points(name):
    rs = build_root_system(name)
    els = enumerate_group(rs)
    for x, w in itertools.product(els, repeat=2):
        if w.length == x.length + 2 and bruhat_leq(x, w):
            assert len(interval(rs, x, w)) == 4


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_deodhar_parity(name):
    rs = build_root_system(name)
    els = enumerate_group(rs)
    for x, w in itertools.product(els, repeat=2):
        if x != w and bruhat_leq(x, w):
            iv = interval(rs, x, w)
            even = sum(1 for y in iv if y.length % 2 == 0)
            assert 2 * even == len(iv)


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3"])
def test_length_subadditive_and_parity(name):
    rs = build_root_system(name)
    els = enumerate_group(rs)
    for u, v in itertools.product(els, repeat=2):
        l = (u * v).length
        assert l <= u.length + v.length
        assert (l - u.length - v.length) % 2 == 0


@pytest.mark.parametrize("name", ["B3", "G2", "F4"])
def test_reflections_have_odd_length(name):
    rs = build_root_system(name)
    for beta in rs.positive_roots:
        s = reflection(rs, beta)
        assert s.length % 2 == 1
        assert s(beta) == tuple(-c for c in beta)
        assert s * s == identity(rs)


def test_inverse_and_descents(B3):
    for w in enumerate_group(B3):
        assert w * w.inverse() == identity(B3)
        assert w.inverse().length == w.length
        for i in w.left_descents():
            assert w.left_mul_simple(i).length == w.length - 1
        for i in w.right_descents():
            assert w.right_mul_simple(i).length == w.length - 1


def test_non_reduced_words(A2):
    assert from_word(A2, [1, 1, 2]) == from_word(A2, [2])
    assert from_word(A2, [1, 2, 1, 2, 1, 2]) == identity(A2)


def test_errors(A2, B2):
    with pytest.raises(SimpleIndexError):
        from_word(A2, [3])
    with pytest.raises(RootSystemMismatch):
        compose(A2, identity(A2), identity(B2))
    with pytest.raises(EnumerationCapError):
        weyl_group(build_root_system("E6"), cap=1000)


def test_pickle_roundtrip(B3):
    import pickle

    w = from_word(B3, [1, 2, 3])
    u = pickle.loads(pickle.dumps(w))
    assert u == w and u.rs is B3
