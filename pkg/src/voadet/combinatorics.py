"""Partitions, weight vectors and the counting quantities N(k,a), S(k,n), b_n."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, isqrt
from typing import Iterator, List, Tuple


class ConsistencyError(ArithmeticError):
    """A quantity that must be integral (an index or exponent) was not."""


@dataclass(frozen=True, order=True)
class WeightVector:
    """Almost-zero multiplicity sequence ``(a_1, a_2, ...)``.

    ``a_j`` counts the degree-``j`` slots.  Trailing zeros are trimmed so
    equal vectors compare and hash equal.
    """

    multiplicities: Tuple[int, ...]

    def __init__(self, multiplicities=()):
        mult = tuple(int(x) for x in multiplicities)
        if any(x < 0 for x in mult):
            raise ValueError("multiplicities must be nonnegative")
        while mult and mult[-1] == 0:
            mult = mult[:-1]
        object.__setattr__(self, "multiplicities", mult)

    @property
    def weight(self) -> int:
        return sum(j * a for j, a in enumerate(self.multiplicities, start=1))

    @property
    def length(self) -> int:
        """Total number of factors, i.e. the sum of the multiplicities."""
        return sum(self.multiplicities)

    def items(self) -> Iterator[Tuple[int, int]]:
        """Yield ``(j, a_j)`` for the nonzero slots."""
        for j, a in enumerate(self.multiplicities, start=1):
            if a:
                yield j, a

    def to_partition(self) -> Tuple[int, ...]:
        parts: List[int] = []
        for j in range(len(self.multiplicities), 0, -1):
            parts.extend([j] * self.multiplicities[j - 1])
        return tuple(parts)

    @classmethod
    def from_partition(cls, parts) -> "WeightVector":
        parts = tuple(parts)
        if any(p <= 0 for p in parts):
            raise ValueError("partition parts must be positive")
        top = max(parts, default=0)
        return cls(parts.count(j) for j in range(1, top + 1))

    def __iter__(self):
        return iter(self.multiplicities)

    def __repr__(self) -> str:
        return f"WeightVector{self.multiplicities}"


@lru_cache(maxsize=None)
def partitions(n: int, largest: int | None = None) -> Tuple[Tuple[int, ...], ...]:
    """Partitions of ``n`` as weakly decreasing tuples, in reverse lex order.

    ``partitions(0)`` is ``((),)``: the empty partition.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if largest is None or largest > n:
        largest = n
    if n == 0:
        return ((),)
    out = []
    for first in range(largest, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def weight_vectors(n: int) -> List[WeightVector]:
    """All weight vectors of weight exactly ``n``.

    The set is empty for ``n = 0``.  Vectors come out in reverse
    lexicographic order of their partitions, e.g. for ``n = 4``:
    (4), (2,1), (0,2), (1,0,1), (0,0,0,1).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return []
    return [WeightVector.from_partition(p) for p in reversed(partitions(n))]


def compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """Ordered ``k``-tuples of nonnegative integers summing to ``n``.

    Emitted in reverse lexicographic order, (n,0,...,0) first.
    """
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def count_monomials(k: int, m: int) -> int:
    """Number of degree-``m`` monomials in ``k`` commuting variables."""
    if k < 1 or m < 0:
        raise ValueError("need k >= 1 and m >= 0")
    return comb(m + k - 1, k - 1)


def block_rank(k: int, a: WeightVector) -> int:
    """Rank of the block B(a): one monomial choice per degree slot."""
    out = 1
    for _, aj in a.items():
        out *= count_monomials(k, aj)
    return out


def n_exponent(k: int, a: WeightVector) -> int:
    """Exponent e with |B(x;a) : B(px;a)| = p^e.

    Every basis monomial of B(a) has total degree ``sum(a)`` and so
    picks up ``p**sum(a)`` when all variables are scaled by ``p``.
    """
    return a.length * block_rank(k, a)


def n_exponent_literal(k: int, a: WeightVector) -> int:
    """``prod_j a_j * C(a_j+k-1, k-1)`` over the slots up to the last nonzero one.

    Kept for reporting only: it vanishes as soon as an interior slot is
    empty and disagrees with the scaling index in general.
    """
    out = 1
    for aj in a.multiplicities:
        out *= aj * count_monomials(k, aj)
    return out


@lru_cache(maxsize=None)
def s_value(k: int, n: int) -> int:
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    total = sum(n_exponent(k, a) for a in weight_vectors(n))
    q, r = divmod(total, k)
    if r:
        raise ConsistencyError(f"S({k},{n}) = {total}/{k} is not an integer")
    return q


@lru_cache(maxsize=None)
def b_value(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1
    for a in weight_vectors(n):
        for i, ai in a.items():
            out *= i ** ai * factorial(ai)
    return out


def b_product(k: int, n: int) -> int:
    """Product of ``b_{n_1} ... b_{n_k}`` over all compositions of ``n``."""
    out = 1
    for comp in compositions(n, k):
        for ni in comp:
            out *= b_value(ni)
    return out


def index_formula_value(k: int, n: int) -> int:
    """Square root of :func:`b_product`, which must be a perfect square."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    prod = b_product(k, n)
    root = isqrt(prod)
    if root * root != prod:
        raise ConsistencyError(f"b-product {prod} for k={k}, n={n} is not a square")
    return root


def b_product_weighted(k: int, n: int) -> int:
    """Product of the norms of the orthonormal monomial basis of weight ``n``.

    A composition ``(n_1, ..., n_k)`` carries ``prod_j p(n_j)`` monomials,
    so ``b_{n_i}`` enters with exponent ``prod_{j != i} p(n_j)`` rather
    than once as in :func:`b_product`.  The two agree whenever at most one
    ``p(n_j)`` exceeds 1, in particular for k = 1 or n <= 3.
    """
    out = 1
    for comp in compositions(n, k):
        counts = [len(partitions(ni)) for ni in comp]
        for i, ni in enumerate(comp):
            out *= b_value(ni) ** _prod(c for j, c in enumerate(counts) if j != i)
    return out


def index_formula_weighted(k: int, n: int) -> int:
    """Square root of :func:`b_product_weighted`."""
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    prod = b_product_weighted(k, n)
    root = isqrt(prod)
    if root * root != prod:
        raise ConsistencyError(f"weighted b-product for k={k}, n={n} is not a square")
    return root


@lru_cache(maxsize=None)
def fock_dimension(k: int, n: int) -> int:
    """Dimension of the weight-``n`` piece of the k-variable Fock space."""
    return sum(_prod(len(partitions(ni)) for ni in comp) for comp in compositions(n, k))


def _prod(xs) -> int:
    out = 1
    for x in xs:
        out *= x
    return out
