import pytest

from peeling.digraph import NotInitialSection, erasable_in_residual, out_degree, residual_theta
from peeling.lattice import build
from peeling.weak_b import (
    SignedPermutation, all_signed_permutations, b_adjacent, build_b, d_omega, inv_b, inv_b_set,
    shifted_boxes, shifted_hook, signed_perm_from_inversions, weak_order_covers_b,
)


def test_signed_permutation():
    w = SignedPermutation.parse("-2,1")
    assert w(-1) == 2 and w(2) == 1
    assert w.full_window() == (-1, 2, -2, 1)
    assert str(w) == "-2,1"
    with pytest.raises(ValueError):
        SignedPermutation((1, -1))


def test_build_b_examples():
    g = build_b(1)
    assert g.labels == ((-1, 1),) and g.theta == (0,)
    g = build_b(2)
    assert shifted_hook((-2, 2), 2) == {(-1, 2), (1, 2)}
    th = dict(zip(g.labels, g.theta))
    assert th[(-2, 2)] == 1 and th[(1, 2)] == 0 and th[(-1, 1)] == 0


def test_hook_must_range_over_negative_k():
    # (-2,3) reaches (1,2) only through k = -1
    assert (1, 2) in shifted_hook((-2, 3), 3)


@pytest.mark.parametrize("n", range(1, 7))
def test_even_out_degree_and_size(n):
    g = build_b(n)
    assert g.n == n * n == len(shifted_boxes(n))
    assert all(out_degree(g, v) % 2 == 0 for v in range(g.n))


def test_inv_b_examples():
    assert inv_b_set(SignedPermutation.identity(3)) == frozenset()
    assert inv_b_set(SignedPermutation((-1, 2, 3))) == {(-1, 1)}
    # the longest element of B_2 is -id
    assert inv_b_set(SignedPermutation((-1, -2))) == set(shifted_boxes(2))
    assert inv_b_set(SignedPermutation((-2, -1))) == {(-2, 2), (-1, 1), (-1, 2)}


def test_signed_perm_from_inversions():
    assert signed_perm_from_inversions([], 2) == SignedPermutation.identity(2)
    assert signed_perm_from_inversions([(-1, 1)], 2) == SignedPermutation((-1, 2))
    assert signed_perm_from_inversions([(1, 2)], 2) == SignedPermutation((2, 1))
    with pytest.raises(NotInitialSection):
        signed_perm_from_inversions([(-2, 2)], 2)


def test_d_omega_examples():
    e = SignedPermutation.identity(2)
    assert d_omega(e, (-2, 2)) == 1
    assert d_omega(e, (-1, 2)) == 1
    assert d_omega(SignedPermutation((-1, 2)), (1, 2)) == 0


def test_b_adjacent_examples():
    e = SignedPermutation.identity(2)
    assert b_adjacent(e, -1, 1)
    assert b_adjacent(e, 1, 2)
    assert not b_adjacent(e, -2, 2)


def test_length_recurrence():
    for w in all_signed_permutations(3):
        assert inv_b(w) == len(inv_b_set(w))
        for i in range(3):
            up = w(1) > 0 if i == 0 else w(i) < w(i + 1)
            assert inv_b(w.right_mul(i)) - inv_b(w) == (1 if up else -1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_isomorphism_and_erasability(n):
    g = build_b(n)
    lat = build(g)
    assert len(lat) == 2 ** n * [1, 1, 2, 6][n]
    key = lambda e: signed_perm_from_inversions(g.labels_of(e), n).window
    mine = {key(e): {key(lat.elements[j]) for j in lat.covers[i]} for i, e in enumerate(lat.elements)}
    assert mine == weak_order_covers_b(n)
    for w in all_signed_permutations(n):
        inv = inv_b_set(w)
        ids = g.vertices_of(inv)
        for v, t in residual_theta(g, ids).items():
            assert t == d_omega(w, g.label(v))
        erasable = {g.label(v) for v in erasable_in_residual(g, ids)}
        assert erasable == {box for box in g.labels if box not in inv and b_adjacent(w, *box)}
