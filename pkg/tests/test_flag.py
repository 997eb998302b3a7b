import pytest

from peeling.digraph import validate
from peeling.lattice import build
from peeling.flag import (
    ColoredPermutation, all_colored_permutations, build_flag, finv, flag_order_covers,
    generator, is_flag_cover, psi, psi_inverse,
)
from peeling.weak_a import Permutation

ID2 = Permutation.identity(2)


def test_build_flag_examples():
    g = build_flag(2, 2)
    assert dict(zip(g.labels, g.theta)) == {(1, 2): 0, (-1, 1): 0, (-1, 2): 1, (-2, 2): 0}
    g = build_flag(2, 4)
    assert g.n == 6 + 10 and validate(g).valid
    for r, n in [(3, 3), (4, 2)]:
        g = build_flag(r, n)
        assert validate(g).valid
        for b in range(1, n + 1):
            assert g.theta[g.vertex((-(r - 1) * b, b))] == 0
    with pytest.raises(ValueError):
        build_flag(1, 2)


def test_finv_examples():
    assert finv(ColoredPermutation.identity(2, 2)) == 0
    assert finv(ColoredPermutation((1, 1), Permutation((2, 1)), 2)) == 4
    assert finv(ColoredPermutation((2, 0), ID2, 3)) == 2


def test_parse_and_print():
    p = ColoredPermutation.parse("1,0 | 2,1", 2)
    assert p.colors == (1, 0) and p.perm == Permutation((2, 1))
    assert str(p) == "1,0 | 2,1"


def test_product_rule():
    r, n = 3, 3
    elems = all_colored_permutations(r, n)
    e = ColoredPermutation.identity(r, n)
    for p in elems[:40]:
        assert p * e == p and e * p == p
        for q in elems[::17]:
            for s in elems[::23]:
                assert (p * q) * s == p * (q * s)
    pi = ColoredPermutation((0, 2, 1), Permutation((3, 1, 2)), 3)
    assert (pi * generator("b", 2, 3, 3)).colors == (0, 0, 1)


def test_psi_examples():
    g = build_flag(2, 2)
    assert psi(g, 0, 2) == ColoredPermutation.identity(2, 2)
    assert psi(g, g.vertices_of([(-1, 1)]), 2) == ColoredPermutation((1, 0), ID2, 2)
    assert psi(g, g.full_mask, 2) == ColoredPermutation((1, 1), Permutation((2, 1)), 2)
    assert psi_inverse(g, ColoredPermutation.identity(2, 2)) == ()
    assert psi_inverse(g, ColoredPermutation((1, 0), ID2, 2)) == g.vertices_of([(-1, 1)])


def test_is_flag_cover_examples():
    e = ColoredPermutation.identity(2, 2)
    assert is_flag_cover(e, ("b", 1))
    assert not is_flag_cover(e, ("a", 1))
    assert is_flag_cover(ColoredPermutation((0, 1), ID2, 2), ("a", 1))
    with pytest.raises(IndexError):
        is_flag_cover(e, ("a", 2))


@pytest.mark.parametrize("r,n", [(2, 2), (2, 3), (3, 2)])
def test_isomorphism(r, n):
    g = build_flag(r, n)
    lat = build(g)
    assert len(lat) == r ** n * [1, 1, 2, 6][n]
    mine = {}
    for i, e in enumerate(lat.elements):
        p = psi(g, e, r)
        assert all(0 <= c < r for c in p.colors)
        assert finv(p) == e.bit_count()
        assert g.vertices_of(g.labels_of(e)) == psi_inverse(g, p)
        mine[p.key()] = {psi(g, lat.elements[j], r).key() for j in lat.covers[i]}
    assert mine == flag_order_covers(r, n)
    assert len({psi(g, e, r).key() for e in lat.elements}) == len(all_colored_permutations(r, n))


def test_left_justified_rows():
    r, n = 3, 2
    g = build_flag(r, n)
    for p in all_colored_permutations(r, n):
        u = set(g.labels_of(psi_inverse(g, p)))
        for a, b in u:
            if a < 0:
                assert all((x, b) in u for x in range(-(r - 1) * b, a))
