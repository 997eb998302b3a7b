import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from peeling.digraph import random_valued_digraph
from peeling.lattice import build, maximal_chain_count
from peeling.posets import FinitePoset, random_poset
from peeling.quasisym import (
    GeneralizedColumns, TruncatedPolynomial, affine_factorization, affine_stanley,
    columns_a, columns_affine, compatible_sequences, cyclically_decreasing_elements, fundamental,
    gamma, gamma_affine, gamma_descent, gamma_oracle, gamma_p_partition, gamma_type_a,
    is_cyclically_decreasing, is_semistandard, leading_cell, p_partition_columns, psi_a,
    psi_a_inverse, reduced_words, semistandard_functions, stanley,
)
from peeling.weak_a import Permutation, all_permutations, build_a, inversion_set
from peeling.weak_affine import (
    AffinePermutation, affine_elements, build_affine, inv_affine, sufficient_depth,
)

W0_3 = Permutation((3, 2, 1))
P = TruncatedPolynomial


def poly(m, *terms):
    return P(m, {tuple(e): c for e, c in terms})


# -- polynomials --------------------------------------------------------------

def test_polynomial_arithmetic_and_printing():
    x1, x2 = P.monomial((1, 0)), P.monomial((0, 1))
    s = x1 * x1 + x1 * x2.scale(3) - x2
    assert str(s) == "x1^2 + 3*x1*x2 - x2"
    assert str(P.zero(2)) == "0" and str(P.one(2)) == "1"
    assert (s - s).is_zero()
    assert P.from_json(s.to_json()) == s
    assert s.to_json()["terms"][0] == {"exps": [2, 0], "coef": 1}
    with pytest.raises(ValueError):
        x1 + P.monomial((1, 0, 0))


def test_quasisymmetry_and_symmetry_tests():
    qs = fundamental([1], 2, 3)
    assert qs.is_quasisymmetric() and qs.is_symmetric()
    assert not P.monomial((1, 0)).is_quasisymmetric()
    m21 = poly(3, ((2, 1, 0), 1), ((2, 0, 1), 1), ((0, 2, 1), 1))
    assert m21.is_quasisymmetric() and not m21.is_symmetric()


# -- fundamental --------------------------------------------------------------

def test_fundamental_examples():
    assert fundamental([], 2, 2) == poly(2, ((2, 0), 1), ((1, 1), 1), ((0, 2), 1))
    assert fundamental([1, 2], 3, 3) == poly(3, ((1, 1, 1), 1))
    assert fundamental([1], 3, 2) == poly(2, ((1, 2), 1))


# -- gamma --------------------------------------------------------------------

def test_gamma_empty_is_one():
    g = build_a(3)
    assert gamma(g, [], columns_a(3), 3) == P.one(3)


def test_gamma_full_staircase():
    g = build_a(3)
    assert gamma(g, g.full_mask, columns_a(3), 2) == poly(2, ((2, 1), 1), ((1, 2), 1))


def test_columns_a():
    cols = columns_a(3)
    assert cols[(1, 2)] == {(1, 2), (1, 3)}
    assert cols[(2, 3)] == {(2, 3)}


def test_columns_affine():
    cols = columns_affine(3, 2)
    assert {(1, 3), (1, 5)} <= cols[(1, 2)]
    assert (1, 4) not in cols[(1, 2)]
    assert max(b for _, b in cols[(1, 2)]) <= 1 + 2 * 3


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=10**6))
def test_fast_gamma_matches_oracle(k, seed):
    rng = random.Random(seed)
    g = random_valued_digraph(k, rng)
    cols = GeneralizedColumns({v: frozenset(u for u in range(k) if rng.random() < 0.4)
                               for v in range(k)})
    for e in build(g).elements:
        if e.bit_count() <= 5:
            fast = gamma(g, e, cols, 3)
            assert fast == gamma_oracle(g, e, cols, 3)
            assert fast.is_quasisymmetric()


def test_square_free_coefficient_is_chain_count():
    rng = random.Random(4)
    for _ in range(10):
        g = random_valued_digraph(5, rng)
        cols = GeneralizedColumns({v: frozenset(range(5)) for v in range(5)})
        for e in build(g).elements:
            k = e.bit_count()
            poly_ = gamma(g, e, cols, k) if k else P.one(1)
            coef = poly_.coefficient((1,) * k) if k else 1
            assert coef == maximal_chain_count(g, e)


def test_is_semistandard():
    g = build_a(3)
    cols = columns_a(3)
    ids = {g.label(v): v for v in range(g.n)}
    f = {ids[(1, 2)]: 1, ids[(1, 3)]: 2, ids[(2, 3)]: 2}
    assert is_semistandard(g, g.full_mask, cols, f)
    f[ids[(1, 3)]] = 1
    assert not is_semistandard(g, g.full_mask, cols, f)
    assert compatible_sequences(g, g.full_mask, cols, {v: 1 for v in range(3)}) == []


def test_gamma_descent_is_exposed_but_unconstrained():
    g = build_a(3)
    # agrees in type A, where each peeling sequence is a reduced word
    assert gamma_descent(g, g.full_mask, columns_a(3), 3) == gamma(g, g.full_mask, columns_a(3), 3)


# -- P-partitions ---------------------------------------------------------------

def test_p_partition_examples():
    one = FinitePoset(("x",), frozenset())
    assert gamma_p_partition(one, {"x": 1}, 3) == poly(3, ((1, 0, 0), 1), ((0, 1, 0), 1), ((0, 0, 1), 1))
    anti = FinitePoset(("x", "y"), frozenset())
    assert gamma_p_partition(anti, {"x": 1, "y": 2}, 3) == fundamental([], 2, 3) + fundamental([1], 2, 3)
    chain = FinitePoset(("x", "y"), frozenset({("x", "y")}))
    assert gamma_p_partition(chain, {"x": 2, "y": 1}, 3) == fundamental([1], 2, 3)
    assert p_partition_columns(chain, {"x": 2, "y": 1})["x"] == {"y"}


def test_p_partition_two_ways_random():
    rng = random.Random(8)
    for _ in range(15):
        p = random_poset(rng.randint(1, 5), rng)
        labels = list(range(1, len(p) + 1))
        rng.shuffle(labels)
        lab = dict(zip(p.elements, labels))
        desc = gamma_p_partition(p, lab, 3, method="descent")
        assert desc == gamma_p_partition(p, lab, 3, method="columns")
        assert desc.is_quasisymmetric()


# -- Stanley ----------------------------------------------------------------------

def test_reduced_words():
    assert reduced_words(Permutation.identity(3)) == [()]
    assert reduced_words(W0_3) == [(1, 2, 1), (2, 1, 2)]
    assert len(reduced_words(Permutation((4, 3, 2, 1)))) == 16
    assert reduced_words(AffinePermutation((2, 1, 3)).right_mul(2)) == [(1, 2)]


def test_stanley_examples():
    assert stanley(Permutation.identity(3), 2) == P.one(2)
    assert stanley(Permutation((2, 1, 3)), 3) == poly(3, ((1, 0, 0), 1), ((0, 1, 0), 1), ((0, 0, 1), 1))
    assert stanley(W0_3, 2) == poly(2, ((2, 1), 1), ((1, 2), 1))


def test_stanley_equals_gamma_s4():
    for p in all_permutations(4):
        s = stanley(p, 4)
        assert gamma_type_a(p, 4) == s
        assert s.is_symmetric()


def test_cyclically_decreasing():
    assert is_cyclically_decreasing([2, 1], 3)
    assert not is_cyclically_decreasing([1, 2], 3)
    assert is_cyclically_decreasing([1, 3], 3)
    assert not is_cyclically_decreasing([1, 2, 3], 3)
    assert not is_cyclically_decreasing([1, 1], 3)
    assert len(cyclically_decreasing_elements(3)) == 7


def test_affine_stanley_examples():
    e = AffinePermutation.identity(3)
    s1 = AffinePermutation((2, 1, 3))
    assert affine_stanley(e, 2) == P.one(2)
    assert affine_stanley(s1, 2) == poly(2, ((1, 0), 1), ((0, 1), 1))
    # s1 s2 is not cyclically decreasing, so it must split as s1 * s2
    assert affine_stanley(s1.right_mul(2), 2) == poly(2, ((1, 1), 1))
    assert gamma_affine(s1.right_mul(2), 2) == poly(2, ((1, 1), 1))


def test_affine_gamma_equals_affine_stanley_small():
    for ps in affine_elements(3, 3).values():
        for p in ps:
            a = affine_stanley(p, 3)
            assert gamma_affine(p, 3) == a
            assert a.is_symmetric()


# -- the type A bijection -------------------------------------------------------

def test_leading_cell():
    s1 = Permutation((2, 1, 3))
    assert leading_cell({(1, 2): 4}, s1) == (1, 2)
    f = {(1, 2): 1, (1, 3): 2, (2, 3): 2}
    cell = leading_cell(f, W0_3)
    assert cell == (2, 3)
    assert inversion_set(W0_3) - {cell} == inversion_set(Permutation((2, 3, 1)))
    with pytest.raises(ValueError):
        leading_cell({}, s1)


def test_psi_a_rejects_column_ties():
    with pytest.raises(ValueError):
        psi_a({(1, 2): 1, (1, 3): 1, (2, 3): 2}, W0_3)


def test_psi_a_single_cell():
    assert psi_a({(2, 3): 5}, Permutation((1, 3, 2))) == ((2,), (5,))


def test_psi_a_roundtrip_s3():
    g = build_a(3)
    cols = columns_a(3)
    for p in all_permutations(3):
        ids = g.vertices_of(inversion_set(p))
        words = set(reduced_words(p))
        for vals in semistandard_functions(g, ids, cols, 3):
            f = {g.label(v): x for v, x in zip(ids, vals)}
            word, weights = psi_a(f, p)
            assert word in words
            for j in range(len(word) - 1):
                assert weights[j] <= weights[j + 1]
                if word[j] < word[j + 1]:
                    assert weights[j] < weights[j + 1]
            assert psi_a_inverse(word, weights, 3) == f
        # and backwards: every admissible weighted word comes from some f
        for word in words:
            for weights in product(range(1, 4), repeat=len(word)):
                ok = all(weights[j] <= weights[j + 1] and (word[j] > word[j + 1] or weights[j] < weights[j + 1])
                         for j in range(len(word) - 1))
                if ok:
                    f = psi_a_inverse(word, weights, 3)
                    assert psi_a(f, p) == (word, weights)


# -- affine factorizations --------------------------------------------------------

def test_factorization_does_not_depend_on_sequence():
    for ps in affine_elements(3, 4).values():
        for p in ps:
            inv = inv_affine(p)
            depth = sufficient_depth(inv, 3)
            g = build_affine(3, depth)
            ids = g.vertices_of(inv)
            cols = columns_affine(3, depth)
            for vals in semistandard_functions(g, ids, cols, 3):
                f = dict(zip(ids, vals))
                facs = {affine_factorization(g, f, s, 3, 3) for s in compatible_sequences(g, ids, cols, f)}
                assert len(facs) == 1
                (fac,) = facs
                prod_ = AffinePermutation.identity(3)
                for v in fac:
                    prod_ = prod_ * v
                assert prod_ == p
