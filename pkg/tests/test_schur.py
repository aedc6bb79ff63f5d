import random
from fractions import Fraction

import pytest

from voadet.combinatorics import fock_dimension, index_formula_weighted
from voadet.fock import FockElement, gram_matrix, make_monomial
from voadet.lattice import BUILTIN_LATTICES, is_even
from voadet.schur import (a_basis, b_in_a_coordinates, index_a_over_b, index_invariant_factors,
                          schur_coefficient, verify_b_subring_of_a)
from voadet.verification import random_unimodular


def X(r, i=0):
    return FockElement.monomial(make_monomial([(r, i)]))


def series_exp(order):
    """Coefficients of exp(sum_r x(-r) z^r / r) up to z^order, by summing X^q/q!."""
    base = [FockElement()] + [X(r) * Fraction(1, r) for r in range(1, order + 1)]

    def mul(a, b):
        out = [FockElement() for _ in range(order + 1)]
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j in range(order + 1 - i):
                if b[j]:
                    out[i + j] = out[i + j] + ai * b[j]
        return out

    total = [FockElement.vacuum()] + [FockElement() for _ in range(order)]
    power = list(total)
    fact = 1
    for q in range(1, order + 1):
        power = mul(power, base)
        fact *= q
        total = [t + p * Fraction(1, fact) for t, p in zip(total, power)]
    return total


def test_schur_coefficients_match_series_exponentiation():
    coeffs = series_exp(8)
    for n in range(9):
        assert schur_coefficient(n) == coeffs[n]


def test_schur_examples():
    assert schur_coefficient(0) == FockElement.vacuum()
    assert schur_coefficient(1) == X(1)
    half = Fraction(1, 2)
    assert schur_coefficient(2) == FockElement.monomial(make_monomial([(1, 0), (1, 0)]), half) + X(2) * half


def test_schur_leading_coefficient():
    from math import factorial
    for n in range(1, 8):
        top = make_monomial([(1, 0)] * n)
        assert schur_coefficient(n).terms[top] == Fraction(1, factorial(n))


def test_a_basis_examples():
    b = a_basis(1, 2)
    assert b.labels == [((2,),), ((1, 1),)]
    assert b.elements == [schur_coefficient(2), schur_coefficient(1) * schur_coefficient(1)]
    assert a_basis(2, 1).elements == [X(1, 0), X(1, 1)]
    assert len(a_basis(2, 2)) == 5


@pytest.mark.parametrize("k", [1, 2, 3])
def test_a_basis_size(k):
    for n in range(7):
        assert len(a_basis(k, n)) == fock_dimension(k, n)


def test_index_examples():
    assert index_a_over_b(1, 1) == 1
    assert index_a_over_b(1, 2) == 2
    assert index_a_over_b(2, 2) == 4


def test_subring_examples():
    # x(-2) = 2 s_2 - s_1^2
    coords = b_in_a_coordinates(1, 2)
    assert coords == [[0, 1], [2, -1]]
    assert verify_b_subring_of_a(1, 1)
    assert verify_b_subring_of_a(2, 3)
    assert len(b_in_a_coordinates(2, 3)) == 10


@pytest.mark.parametrize("k", [1, 2, 3])
def test_index_matches_weighted_formula(k):
    for n in range(6):
        assert index_a_over_b(k, n) == index_formula_weighted(k, n)


def test_invariant_factors_multiply_to_index():
    for k, n in [(1, 4), (2, 3), (2, 4)]:
        prod = 1
        for f in index_invariant_factors(k, n):
            prod *= f
        assert prod == index_a_over_b(k, n)


@pytest.mark.parametrize("k", [2, 3])
def test_index_basis_independent(k):
    rng = random.Random(7 + k)
    for _ in range(3):
        u = random_unimodular(k, rng)
        for n in range(5):
            assert index_a_over_b(k, n, u) == index_a_over_b(k, n)


@pytest.mark.parametrize("name", [n for n, lat in sorted(BUILTIN_LATTICES.items()) if is_even(lat)])
def test_form_integral_on_a_basis(name):
    lat = BUILTIN_LATTICES[name]
    for n in range(5 if lat.rank == 1 else 4):
        g = gram_matrix(a_basis(lat.rank, n).elements, lat.as_lists())
        assert all(isinstance(x, int) for row in g for x in row)
