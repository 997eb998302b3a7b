import pytest

from peeling.digraph import (
    NotInitialSection, erasable_in_residual, is_initial_section, residual_theta, validate,
)
from peeling.lattice import build
from peeling.weak_affine import (
    AffinePermutation, affine_adjacent, affine_elements, affine_length_census,
    affine_perm_from_inversions, build_affine, cyl_boxes, cyl_hook, d_sigma_affine,
    depth_for_rank, inv_affine, sufficient_depth, weak_order_covers_affine,
)

S1 = AffinePermutation((2, 1, 3))
S1S2 = S1.right_mul(2)


def test_affine_permutation():
    assert S1(4) == 5 and S1(5) == 4 and S1.position(4) == 5
    s3 = AffinePermutation.identity(3).right_mul(3)
    assert s3.window == (0, 2, 4)
    assert s3.length() == 1
    assert (S1 * S1) == AffinePermutation.identity(3)
    assert S1S2.inverse() * S1S2 == AffinePermutation.identity(3)
    with pytest.raises(ValueError):
        AffinePermutation((1, 4, 3))
    with pytest.raises(ValueError):
        AffinePermutation((2, 3, 4))


def test_theta_examples():
    g = build_affine(3, 2)
    th = dict(zip(g.labels, g.theta))
    assert th[(1, 2)] == 0 and th[(1, 3)] == 1 and th[(1, 5)] == 2
    assert validate(g).valid


def test_window_closed_under_arcs():
    for depth in (1, 2, 3):
        boxes = set(cyl_boxes(3, depth))
        for box in boxes:
            assert cyl_hook(box, 3) <= boxes


def test_wraparound_row_target():
    # (3,6) must reach (1,2) = (5,6) translated back by one period
    assert (1, 2) in cyl_hook((3, 6), 4)


def test_inv_affine_examples():
    assert inv_affine(AffinePermutation.identity(3)) == frozenset()
    assert inv_affine(S1) == {(1, 2)}
    assert inv_affine(S1S2) == {(1, 2), (1, 3)}


def test_affine_perm_from_inversions():
    assert affine_perm_from_inversions([], 3) == AffinePermutation.identity(3)
    assert affine_perm_from_inversions([(1, 2)], 3) == S1
    with pytest.raises(NotInitialSection):
        affine_perm_from_inversions([(1, 2), (2, 3)], 3)


def test_d_sigma_affine_examples():
    e = AffinePermutation.identity(3)
    assert d_sigma_affine(e, (1, 3)) == 1
    assert d_sigma_affine(e, (2, 3)) == 0
    g = build_affine(3, 2)
    th = residual_theta(g, [g.vertex((1, 2))])
    assert d_sigma_affine(S1, (1, 3)) == th[g.vertex((1, 3))]


def test_sufficient_depth_examples():
    assert sufficient_depth([], 3) == 1
    for s in ([(1, 2)], inv_affine(S1S2)):
        d = sufficient_depth(s, 3)
        g1, g2 = build_affine(3, d), build_affine(3, d + 1)
        assert is_initial_section(g1, g1.vertices_of(s)) == is_initial_section(g2, g2.vertices_of(s))


def test_length_census():
    assert affine_length_census(3, 6) == [1, 3, 6, 9, 12, 15, 18]
    assert affine_length_census(2, 4) == [1, 2, 2, 2, 2]


def test_window_stability():
    for ps in affine_elements(3, 5).values():
        for p in ps:
            inv = inv_affine(p)
            d = sufficient_depth(inv, 3)
            answers = []
            for depth in (d, d + 2):
                g = build_affine(3, depth)
                ids = g.vertices_of(inv)
                er = {g.label(v) for v in erasable_in_residual(g, ids)}
                # compare within the smaller window
                er = {box for box in er if box[1] - box[0] < d * 3}
                answers.append((is_initial_section(g, ids), er))
            assert answers[0] == answers[1]


def test_erasable_iff_adjacent_and_theta_equals_d_sigma():
    for ps in affine_elements(3, 5).values():
        for p in ps:
            inv = inv_affine(p)
            assert len(inv) == p.length()
            assert affine_perm_from_inversions(inv, 3) == p
            g = build_affine(3, sufficient_depth(inv, 3))
            ids = g.vertices_of(inv)
            for v, t in residual_theta(g, ids).items():
                assert t == d_sigma_affine(p, g.label(v))
            er = {g.label(v) for v in erasable_in_residual(g, ids)}
            assert er == {box for box in g.labels if box not in inv and affine_adjacent(p, *box)}


def test_order_embedding():
    covers = weak_order_covers_affine(3, 5)
    for p, ups in covers.items():
        for q in ups:
            assert inv_affine(p) < inv_affine(q)
            assert len(inv_affine(q)) == len(inv_affine(p)) + 1


def test_lattice_covers_match_generator_oracle():
    k = 5
    g = build_affine(3, depth_for_rank(k, 3))
    lat = build(g, max_rank=k)
    key = lambda e: affine_perm_from_inversions(g.labels_of(e), 3)
    mine = {key(e): {key(lat.elements[j]) for j in lat.covers[i]}
            for i, e in enumerate(lat.elements) if e.bit_count() < k}
    oracle = weak_order_covers_affine(3, k)
    assert mine == {p: ups for p, ups in oracle.items() if p.length() < k}
