"""The graded symmetric algebra M(1) on modes ``x_i(-r)`` with exact coefficients.

A monomial is a sorted tuple of ``(mode, variable, exponent)`` triples,
``mode >= 1`` and ``variable`` in ``0..k-1``.  The empty tuple is the
vacuum.  Elements are sparse linear combinations of monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .combinatorics import WeightVector, weight_vectors
from .exactlinalg import Scalar, normalize

Monomial = Tuple[Tuple[int, int, int], ...]
Gram = Tuple[Tuple[Scalar, ...], ...]

VACUUM: Monomial = ()


class FockError(ValueError):
    pass


def make_monomial(factors: Iterable[Tuple[int, int]]) -> Monomial:
    """Build a monomial from ``(mode, variable)`` factors, repeats allowed."""
    counts: Dict[Tuple[int, int], int] = {}
    for r, i in factors:
        if r < 1 or i < 0:
            raise FockError(f"bad factor x{i + 1}({-r})")
        counts[(r, i)] = counts.get((r, i), 0) + 1
    return tuple((r, i, e) for (r, i), e in sorted(counts.items()))


def monomial_weight(m: Monomial) -> int:
    return sum(r * e for r, _, e in m)


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, _, e in m)


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    counts = {(r, i): e for r, i, e in a}
    for r, i, e in b:
        counts[(r, i)] = counts.get((r, i), 0) + e
    return tuple((r, i, e) for (r, i), e in sorted(counts.items()))


def mode_content(m: Monomial) -> Tuple[Tuple[int, int], ...]:
    """Multiset of modes as sorted ``(mode, count)`` pairs."""
    counts: Dict[int, int] = {}
    for r, _, e in m:
        counts[r] = counts.get(r, 0) + e
    return tuple(sorted(counts.items()))


def weight_vector_of(m: Monomial) -> WeightVector:
    content = dict(mode_content(m))
    top = max(content, default=0)
    return WeightVector(content.get(j, 0) for j in range(1, top + 1))


def render_monomial(m: Monomial) -> str:
    """Canonical text form, e.g. ``x1(-1)^2 x2(-3)``; the vacuum is ``1``."""
    if not m:
        return "1"
    parts = []
    for r, i, e in m:
        s = f"x{i + 1}({-r})"
        parts.append(s if e == 1 else f"{s}^{e}")
    return " ".join(parts)


@dataclass
class FockElement:
    """Finite linear combination of monomials with rational coefficients."""

    terms: Dict[Monomial, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        self.terms = {m: normalize(c) for m, c in self.terms.items() if c}

    @classmethod
    def monomial(cls, m: Monomial, coeff: Scalar = 1) -> "FockElement":
        return cls({m: coeff})

    @classmethod
    def vacuum(cls) -> "FockElement":
        return cls({VACUUM: 1})

    @classmethod
    def generator(cls, i: int, r: int) -> "FockElement":
        """The single mode ``x_{i+1}(-r)``."""
        return cls({make_monomial([(r, i)]): 1})

    def __add__(self, other: "FockElement") -> "FockElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return FockElement(out)

    def __neg__(self) -> "FockElement":
        return FockElement({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "FockElement") -> "FockElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FockElement):
            out: Dict[Monomial, Scalar] = {}
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = monomial_mul(m1, m2)
                    out[m] = out.get(m, 0) + c1 * c2
            return FockElement(out)
        return FockElement({m: c * other for m, c in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, FockElement) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def weights(self) -> set:
        return {monomial_weight(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weights()) <= 1

    def weight(self) -> int:
        ws = self.weights()
        if len(ws) != 1:
            raise FockError("element is not homogeneous of a single weight")
        return ws.pop()

    def max_variable(self) -> int:
        return max((i for m in self.terms for _, i, _ in m), default=-1)

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{render_monomial(m)}" for m, c in sorted(self.terms.items()))


def _freeze_gram(gram: Sequence[Sequence[Scalar]]) -> Gram:
    return tuple(tuple(normalize(Fraction(x)) for x in row) for row in gram)


def _permanent(rows: Sequence[int], cols: Sequence[int], gram: Gram) -> Scalar:
    """Permanent of ``gram[rows][cols]`` by Ryser's formula."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return gram[rows[0]][cols[0]]
    total: Scalar = 0
    idx = range(n)
    for size in range(1, n + 1):
        sign = (-1) ** (n - size)
        for subset in combinations(idx, size):
            p: Scalar = 1
            for i in idx:
                s = 0
                gi = gram[rows[i]]
                for j in subset:
                    s += gi[cols[j]]
                p *= s
                if not p:
                    break
            total += sign * p
    return total


@lru_cache(maxsize=1 << 20)
def _pair_monomials(u: Monomial, v: Monomial, gram: Gram) -> Scalar:
    if mode_content(u) != mode_content(v):
        return 0
    k = len(gram)
    by_mode_u: Dict[int, List[int]] = {}
    by_mode_v: Dict[int, List[int]] = {}
    for m, dest in ((u, by_mode_u), (v, by_mode_v)):
        for r, i, e in m:
            if i >= k:
                raise FockError(f"variable x{i + 1} outside a rank-{k} form")
            dest.setdefault(r, []).extend([i] * e)
    out: Scalar = 1
    for r, us in by_mode_u.items():
        vs = by_mode_v[r]
        c = len(us)
        out *= (-r) ** c * _permanent(us, vs, gram)
        if not out:
            return 0
    return out


def pair_monomials(u: Monomial, v: Monomial, gram: Sequence[Sequence[Scalar]]) -> Scalar:
    """Contraction pairing of two monomials.

    Zero unless the mode multisets agree; otherwise, for each mode ``r``
    with ``c`` factors on each side, a factor ``(-r)^c`` times the
    permanent of the form restricted to the factors' variables.
    """
    return _pair_monomials(u, v, _freeze_gram(gram))


def pair(u: FockElement, v: FockElement, gram: Sequence[Sequence[Scalar]]) -> Scalar:
    """Bilinear form on M(1) determined by ``<1|1> = 1`` and adjointness."""
    g = _freeze_gram(gram)
    total: Scalar = 0
    for mu, cu in u.terms.items():
        for mv, cv in v.terms.items():
            p = _pair_monomials(mu, mv, g)
            if p:
                total += cu * cv * p
    return normalize(total)


def _annihilate(i: int, r: int, v: FockElement, gram: Gram) -> FockElement:
    """Action of ``x_i(r)`` (r > 0) on ``v`` via ``[h(r), h'(-s)] = r<h|h'> delta_rs``."""
    out: Dict[Monomial, Scalar] = {}
    for m, c in v.terms.items():
        for idx, (s, j, e) in enumerate(m):
            if s != r:
                continue
            g = gram[i][j]
            if not g:
                continue
            rest = list(m)
            if e == 1:
                del rest[idx]
            else:
                rest[idx] = (s, j, e - 1)
            key = tuple(rest)
            out[key] = out.get(key, 0) + c * e * r * g
    return FockElement(out)


def pair_recursive(u: FockElement, v: FockElement, gram: Sequence[Sequence[Scalar]]) -> Scalar:
    """Same pairing computed by moving one creation mode at a time across.

    Slow; an independent check on :func:`pair`.
    """
    g = _freeze_gram(gram)
    total: Scalar = 0
    for mu, cu in u.terms.items():
        w = v
        for r, i, e in mu:
            for _ in range(e):
                w = -_annihilate(i, r, w, g)
        total += cu * w.terms.get(VACUUM, 0)
    return normalize(total)


def gram_matrix(basis: Sequence[FockElement], gram: Sequence[Sequence[Scalar]]) -> List[List[Scalar]]:
    """Matrix of pairwise pairings of a homogeneous basis."""
    weights = set()
    for b in basis:
        weights |= b.weights()
    if len(weights) > 1:
        raise FockError(f"basis mixes weights {sorted(weights)}")
    g = _freeze_gram(gram)
    monos = sorted({m for b in basis for m in b.terms})
    n = len(basis)
    index = {m: t for t, m in enumerate(monos)}
    coords = [[(index[m], c) for m, c in b.terms.items()] for b in basis]
    # pairings between distinct monomials, computed once
    mono_gram: Dict[Tuple[int, int], Scalar] = {}
    out: List[List[Scalar]] = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            s: Scalar = 0
            for i, ci in coords[a]:
                for j, cj in coords[b]:
                    key = (i, j) if i <= j else (j, i)
                    p = mono_gram.get(key)
                    if p is None:
                        p = _pair_monomials(monos[key[0]], monos[key[1]], g)
                        mono_gram[key] = p
                    if p:
                        s += ci * cj * p
            s = normalize(s)
            out[a][b] = out[b][a] = s
    return out


@dataclass
class BlockIndexedBasis:
    """Monomial basis of the weight-``n`` piece, grouped into B(a) blocks."""

    k: int
    n: int
    blocks: Dict[WeightVector, List[Monomial]]

    @property
    def monomials(self) -> List[Monomial]:
        return [m for ms in self.blocks.values() for m in ms]

    def elements(self) -> List[FockElement]:
        return [FockElement.monomial(m) for m in self.monomials]

    def index(self) -> Dict[Monomial, int]:
        return {m: t for t, m in enumerate(self.monomials)}

    def __len__(self) -> int:
        return sum(len(ms) for ms in self.blocks.values())


def block_monomials(k: int, a: WeightVector) -> List[Monomial]:
    """Basis of B(a): for each slot j a degree-``a_j`` monomial in the ``x_i(-j)``."""
    choices = []
    for j, aj in a.items():
        choices.append([[(j, i) for i in combo]
                        for combo in combinations_with_replacement(range(k), aj)])
    out = []
    for pick in product(*choices):
        out.append(make_monomial(f for part in pick for f in part))
    return out


@lru_cache(maxsize=None)
def _monomial_basis(k: int, n: int) -> Tuple[Tuple[WeightVector, Tuple[Monomial, ...]], ...]:
    if n == 0:
        return ((WeightVector(), (VACUUM,)),)
    return tuple((a, tuple(block_monomials(k, a))) for a in weight_vectors(n))


def monomial_basis(k: int, n: int) -> BlockIndexedBasis:
    if k < 1 or n < 0:
        raise FockError("need k >= 1 and n >= 0")
    return BlockIndexedBasis(k, n, {a: list(ms) for a, ms in _monomial_basis(k, n)})


def coordinates(elements: Sequence[FockElement], index: Mapping[Monomial, int]) -> List[List[Scalar]]:
    """Coordinate rows of ``elements`` with respect to a monomial index."""
    out = []
    for e in elements:
        row: List[Scalar] = [0] * len(index)
        for m, c in e.terms.items():
            try:
                row[index[m]] = c
            except KeyError:
                raise FockError(f"monomial {render_monomial(m)} outside the basis") from None
        out.append(row)
    return out


def substitute_variables(e: FockElement, matrix: Sequence[Sequence[Scalar]]) -> FockElement:
    """Apply the linear substitution ``x_i -> sum_j matrix[i][j] x_j`` to every mode."""
    out: Dict[Monomial, Scalar] = {}
    cache: Dict[Tuple[int, int], FockElement] = {}

    def image(r: int, i: int) -> FockElement:
        key = (r, i)
        if key not in cache:
            cache[key] = FockElement({make_monomial([(r, j)]): c
                                      for j, c in enumerate(matrix[i]) if c})
        return cache[key]

    for m, c in e.terms.items():
        acc = FockElement({VACUUM: c})
        for r, i, p in m:
            for _ in range(p):
                acc = acc * image(r, i)
        for mm, cc in acc.terms.items():
            out[mm] = out.get(mm, 0) + cc
    return FockElement(out)


def scale_variables(e: FockElement, scales: Sequence[Scalar]) -> FockElement:
    """Substitute ``x_i -> scales[i] * x_i``."""
    if any(s == 0 for s in scales):
        raise FockError("scales must be nonzero")
    out = {}
    for m, c in e.terms.items():
        f = c
        for _, i, p in m:
            if i >= len(scales):
                raise FockError(f"no scale given for x{i + 1}")
            f *= Fraction(scales[i]) ** p
        out[m] = f
    return FockElement(out)



def _index_of_images(monos: Sequence[Monomial], images: Sequence[FockElement]) -> int:
    from .exactlinalg import relative_index

    index = {m: t for t, m in enumerate(monos)}
    originals = [FockElement.monomial(m) for m in monos]
    return relative_index(coordinates(images, index), coordinates(originals, index))


def block_transform_index(k: int, a: WeightVector, matrix: Sequence[Sequence[Scalar]]) -> int:
    """|B(x_1..x_k; a) : B(y_1..y_k; a)| for ``y_i = sum_j matrix[i][j] x_j`` (integer matrix)."""
    monos = block_monomials(k, a)
    images = [substitute_variables(FockElement.monomial(m), matrix) for m in monos]
    return _index_of_images(monos, images)


def block_scaling_index(k: int, a: WeightVector, scales: Sequence[int]) -> int:
    """|B(x; a) : B(scales * x; a)|, via the Smith form of the scaled monomials."""
    monos = block_monomials(k, a)
    return _index_of_images(monos, [scale_variables(FockElement.monomial(m), scales) for m in monos])


def scaling_index(k: int, n: int, scales: Sequence[int]) -> int:
    """|B_L(n) : B_L'(n)| for ``L' = span(scales[i] * x_i)``."""
    monos = monomial_basis(k, n).monomials
    return _index_of_images(monos, [scale_variables(FockElement.monomial(m), scales) for m in monos])
