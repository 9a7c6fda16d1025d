import pytest

from oracles import close_roots
from schublocus.errors import CartanTypeError, RootError, SimpleIndexError
from schublocus.roots import CartanType, build_root_system, cartan_matrix, pairing, reflect

CLASSICAL_COUNTS = {
    "A1": 1, "A2": 3, "A3": 6, "A4": 10, "B2": 4, "B3": 9, "B4": 16, "C2": 4, "C3": 9,
    "D4": 12, "D5": 20, "G2": 6, "F4": 24, "E6": 36, "E7": 63, "E8": 120,
}


@pytest.mark.parametrize("name,count", sorted(CLASSICAL_COUNTS.items()))
def test_positive_root_counts(name, count):
    rs = build_root_system(name)
    assert rs.num_positive == count
    assert len(rs.positive_roots) == count


@pytest.mark.parametrize("name", ["A3", "B2", "B3", "C3", "D4", "G2", "F4"])
def test_roots_match_closure_oracle(name):
    rs = build_root_system(name)
    assert set(rs.positive_roots) == close_roots(rs.cartan)


@pytest.mark.parametrize("name", ["A2", "B3", "C3", "D5", "E6", "F4", "G2"])
def test_cartan_shape(name):
    c = cartan_matrix(CartanType.parse(name))
    n = len(c)
    for i in range(n):
        assert c[i][i] == 2
        for j in range(n):
            if i != j:
                assert c[i][j] <= 0
                assert (c[i][j] == 0) == (c[j][i] == 0)


def test_rank2_examples():
    A2 = build_root_system("A2")
    assert set(A2.positive_roots) == {(1, 0), (0, 1), (1, 1)}
    B2 = build_root_system("B2")
    assert set(B2.positive_roots) == {(1, 0), (0, 1), (1, 1), (1, 2)}
    assert pairing(A2, (0, 1), 1) == -1
    assert pairing(B2, (1, 0), 2) == -2
    assert pairing(A2, (1, 1), 1) == 1
    assert reflect(A2, 1, (0, 1)) == (1, 1)
    assert reflect(B2, 2, (1, 0)) == (1, 2)


def test_order_is_height_then_lex():
    rs = build_root_system("B2")
    assert rs.positive_roots == ((0, 1), (1, 0), (1, 1), (1, 2))


@pytest.mark.parametrize("name", ["A3", "B3", "G2", "F4"])
def test_reflection_laws(name):
    rs = build_root_system(name)
    pos = set(rs.positive_roots)
    for i in range(1, rs.rank + 1):
        ai = rs.simple_root(i)
        assert reflect(rs, i, ai) == tuple(-c for c in ai)
        image = {reflect(rs, i, v) for v in pos}
        assert image == (pos - {ai}) | {tuple(-c for c in ai)}
        for v in rs.roots:
            assert reflect(rs, i, reflect(rs, i, v)) == v
            assert pairing(rs, reflect(rs, i, v), i) == -pairing(rs, v, i)


def test_roots_never_mixed_sign():
    rs = build_root_system("E7")
    for v in rs.roots:
        assert all(c >= 0 for c in v) or all(c <= 0 for c in v)


@pytest.mark.parametrize("bad", ["A0", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "X2", "", "B"])
def test_bad_types(bad):
    with pytest.raises(CartanTypeError):
        build_root_system(bad)


def test_errors():
    rs = build_root_system("A2")
    with pytest.raises(SimpleIndexError):
        reflect(rs, 3, (1, 0))
    with pytest.raises(SimpleIndexError):
        pairing(rs, (1, 0), 0)
    with pytest.raises(RootError):
        reflect(rs, 1, (2, 1))


def test_build_is_cached():
    assert build_root_system("B3") is build_root_system(CartanType("B", 3))
