"""The integral form A_L spanned by products of the coefficients ``s_{x,n}``.

``s_{x,n}`` is the ``z^n`` coefficient of ``exp(sum_{r>0} x(-r) z^r / r)``,
i.e. ``sum over partitions lambda of n`` of ``x(-lambda) / z_lambda`` with
``z_lambda = prod_j j^{m_j} m_j!``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import List, Optional, Sequence, Tuple

from .combinatorics import ConsistencyError, compositions, partitions
from .exactlinalg import Scalar, determinant, is_integral, relative_index, smith_normal_form, solve_many
from .fock import FockElement, coordinates, make_monomial, monomial_basis, substitute_variables

PartitionTuple = Tuple[Tuple[int, ...], ...]


def z_factor(parts: Sequence[int]) -> int:
    out = 1
    for j in set(parts):
        m = parts.count(j)
        out *= j ** m * factorial(m)
    return out


@lru_cache(maxsize=None)
def _schur_terms(n: int) -> Tuple[Tuple[Tuple[int, ...], Fraction], ...]:
    return tuple((lam, Fraction(1, z_factor(lam))) for lam in partitions(n))


def schur_coefficient(n: int, variable: int = 0) -> FockElement:
    """``s_{x,n}`` for ``x = x_{variable+1}``; ``s_{x,0}`` is the vacuum."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return FockElement({make_monomial((r, variable) for r in lam): c
                        for lam, c in _schur_terms(n)})


@dataclass
class ABasis:
    """Ordered Z-basis of A_L(n), labelled by k-tuples of partitions."""

    k: int
    n: int
    labels: List[PartitionTuple]
    elements: List[FockElement]

    def __len__(self) -> int:
        return len(self.elements)


def _element(label: PartitionTuple) -> FockElement:
    out = FockElement.vacuum()
    for i, lam in enumerate(label):
        for part in lam:
            out = out * schur_coefficient(part, i)
    return out


@lru_cache(maxsize=None)
def _a_basis(k: int, n: int):
    labels = []
    for comp in compositions(n, k):
        stack: List[PartitionTuple] = [()]
        for ni in comp:
            stack = [prefix + (lam,) for prefix in stack for lam in partitions(ni)]
        labels.extend(stack)
    return tuple(labels), tuple(_element(lab) for lab in labels)


def a_basis(k: int, n: int) -> ABasis:
    """Products ``prod_i prod_t s_{x_i, lambda^(i)_t}`` with ``sum |lambda^(i)| = n``.

    Zero parts are dropped (``s_{x,0} = 1``), so each basis word appears
    once.
    """
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    labels, elements = _a_basis(k, n)
    return ABasis(k, n, list(labels), list(elements))


def _bases_in_coordinates(k: int, n: int, basis_change: Optional[Sequence[Sequence[int]]]):
    mono = monomial_basis(k, n)
    index = mono.index()
    a_elems = a_basis(k, n).elements
    b_elems = mono.elements()
    if basis_change is not None:
        a_elems = [substitute_variables(e, basis_change) for e in a_elems]
        b_elems = [substitute_variables(e, basis_change) for e in b_elems]
    return coordinates(a_elems, index), coordinates(b_elems, index)


def index_a_over_b(k: int, n: int, basis_change: Optional[Sequence[Sequence[int]]] = None) -> int:
    """The index [A_L(n) : B_L(n)].

    With ``basis_change`` (an invertible integer k x k matrix ``U``) both
    forms are built on the basis ``y_i = sum_j U[i][j] x_j`` and compared
    in x-monomial coordinates.

    Computed twice: from the determinants of the two coordinate matrices
    and from the Smith form of the B-in-A coordinate matrix.  The two
    must agree.
    """
    a_rows, b_rows = _bases_in_coordinates(k, n, basis_change)
    det_a = abs(determinant(a_rows))
    det_b = abs(determinant(b_rows))
    ratio = Fraction(det_b) / Fraction(det_a)
    if ratio.denominator != 1:
        raise ConsistencyError(f"[A:B] = {ratio} is not an integer for k={k}, n={n}")
    via_snf = relative_index(b_rows, a_rows)
    if via_snf != ratio:
        raise ConsistencyError(f"determinant route {ratio} != SNF route {via_snf}")
    return ratio.numerator


def b_in_a_coordinates(k: int, n: int) -> List[List[Scalar]]:
    """Coordinates of each monomial basis element in the A-basis."""
    a_rows, b_rows = _bases_in_coordinates(k, n, None)
    return solve_many(a_rows, b_rows)


def verify_b_subring_of_a(k: int, n: int) -> bool:
    return is_integral(b_in_a_coordinates(k, n))


def index_invariant_factors(k: int, n: int) -> Tuple[int, ...]:
    """Invariant factors of the quotient A_L(n)/B_L(n)."""
    factors, _ = smith_normal_form(b_in_a_coordinates(k, n))
    return factors
