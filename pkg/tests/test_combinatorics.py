from itertools import combinations_with_replacement, product

import pytest

from voadet.combinatorics import (WeightVector, b_product, b_product_weighted, b_value, block_rank,
                                  compositions, count_monomials, fock_dimension, index_formula_value,
                                  index_formula_weighted, n_exponent, n_exponent_literal, partitions,
                                  s_value, weight_vectors)
from voadet.fock import block_scaling_index, scaling_index


def pentagonal_partition_counts(limit):
    p = [1] + [0] * limit
    for n in range(1, limit + 1):
        total, j = 0, 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > n:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[n - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            j += 1
        p[n] = total
    return p


def test_weight_vector_canonical_form():
    assert WeightVector((1, 0, 0)) == WeightVector((1,))
    assert hash(WeightVector((0, 2, 0))) == hash(WeightVector((0, 2)))
    a = WeightVector((1, 0, 1))
    assert a.weight == 4
    assert a.length == 2
    assert a.to_partition() == (3, 1)
    assert WeightVector.from_partition((3, 1)) == a


def test_weight_vectors_examples():
    assert weight_vectors(0) == []
    assert weight_vectors(1) == [WeightVector((1,))]
    assert weight_vectors(4) == [WeightVector(v) for v in
                                 [(4,), (2, 1), (0, 2), (1, 0, 1), (0, 0, 0, 1)]]


def test_weight_vector_counts_against_pentagonal_recurrence():
    p = pentagonal_partition_counts(12)
    for n in range(1, 13):
        vs = weight_vectors(n)
        assert len(vs) == p[n]
        assert len(set(vs)) == len(vs)
        assert all(v.weight == n for v in vs)


def test_partitions_of_zero():
    assert partitions(0) == ((),)


def test_compositions():
    assert list(compositions(2, 2)) == [(2, 0), (1, 1), (0, 2)]
    assert sum(1 for _ in compositions(5, 3)) == 21


def test_count_monomials_examples():
    assert count_monomials(5, 0) == 1
    assert count_monomials(2, 3) == 4
    assert count_monomials(3, 2) == 6


@pytest.mark.parametrize("k", range(1, 5))
def test_count_monomials_by_enumeration(k):
    for m in range(7):
        assert count_monomials(k, m) == sum(1 for _ in combinations_with_replacement(range(k), m))


def test_n_exponent_examples():
    assert n_exponent(1, WeightVector((2,))) == 2
    assert n_exponent(1, WeightVector((1, 1))) == 2
    assert n_exponent(2, WeightVector((1, 1))) == 8


def test_n_exponent_literal_disagrees():
    assert n_exponent_literal(2, WeightVector((1, 1))) == 4
    assert n_exponent_literal(1, WeightVector((0, 1))) == 0


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("p", [2, 3])
def test_n_exponent_against_snf_oracle(k, p):
    for n in range(1, 6):
        for a in weight_vectors(n):
            assert block_scaling_index(k, a, [p] * k) == p ** n_exponent(k, a)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_s_value_single_variable_scaling(k):
    for n in range(6):
        for p in (2, 3):
            assert scaling_index(k, n, [p] + [1] * (k - 1)) == p ** s_value(k, n)


def test_s_value_examples():
    assert [s_value(k, 0) for k in range(1, 5)] == [0, 0, 0, 0]
    assert s_value(1, 2) == 3
    assert s_value(2, 2) == 4


def test_s_value_integrality():
    for k in range(1, 5):
        for n in range(9):
            assert k * s_value(k, n) == sum(n_exponent(k, a) for a in weight_vectors(n))


def test_b_value_examples():
    assert b_value(0) == 1
    assert b_value(2) == 4
    assert b_value(3) == 36


def test_index_formula_examples():
    assert index_formula_value(1, 2) == 2
    assert index_formula_value(2, 1) == 1
    assert index_formula_value(2, 2) == 4


def test_weighted_product_agrees_where_multiplicities_are_trivial():
    for n in range(9):
        assert b_product_weighted(1, n) == b_product(1, n)
    for k in (2, 3, 4):
        for n in range(4):
            assert b_product_weighted(k, n) == b_product(k, n)
    # first disagreement: the (2,2) composition carries p(2)*p(2) = 4 monomials
    assert b_product_weighted(2, 4) == b_product(2, 4) * 16
    assert index_formula_weighted(2, 4) == 4 * index_formula_value(2, 4)


def test_weighted_product_is_product_of_monomial_norms():
    # orthonormal basis: each monomial's norm is the product of z_lambda per variable
    def z(lam):
        out = 1
        for j in set(lam):
            m = lam.count(j)
            f = 1
            for t in range(2, m + 1):
                f *= t
            out *= j ** m * f
        return out

    for k in (1, 2, 3):
        for n in range(6):
            total = 1
            for comp in compositions(n, k):
                for lams in product(*(partitions(ni) for ni in comp)):
                    for lam in lams:
                        total *= z(lam)
            assert total == b_product_weighted(k, n)


def test_block_rank_and_fock_dimension():
    assert block_rank(2, WeightVector((1, 1))) == 4
    assert [fock_dimension(3, n) for n in range(7)] == [1, 3, 9, 22, 51, 108, 221]
    for k in (1, 2, 3):
        for n in range(1, 7):
            assert fock_dimension(k, n) == sum(block_rank(k, a) for a in weight_vectors(n))
