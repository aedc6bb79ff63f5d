"""Exact integer/rational linear algebra.

Matrices are plain lists of rows.  Entries are ``int`` or
:class:`fractions.Fraction`; nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import List, Sequence, Tuple, Union

Scalar = Union[int, Fraction]
Matrix = List[List[Scalar]]


class LinalgError(ValueError):
    """Base class for errors raised by this module."""


class DimensionError(LinalgError):
    pass


class DomainError(LinalgError):
    pass


class UnsolvableError(LinalgError):
    pass


class RankError(LinalgError):
    pass


def shape(m: Sequence[Sequence[Scalar]]) -> Tuple[int, int]:
    rows = len(m)
    cols = len(m[0]) if rows else 0
    for row in m:
        if len(row) != cols:
            raise DimensionError("ragged matrix")
    return rows, cols


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(col) for col in zip(*m)]


def matmul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise DimensionError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    bt = transpose(b) if rb else [[] for _ in range(cb)]
    out = []
    for row in a:
        nz = [(j, x) for j, x in enumerate(row) if x]
        out.append([sum((x * col[j] for j, x in nz), 0) for col in bt])
    return out


def normalize(x: Scalar) -> Scalar:
    """Demote integral fractions to ``int``."""
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def is_integral(m: Sequence[Sequence[Scalar]]) -> bool:
    return all(isinstance(x, int) or x.denominator == 1 for row in m for x in row)


def clear_denominators(m: Sequence[Sequence[Scalar]]) -> Tuple[List[List[int]], int]:
    """Return ``(D*m, D)`` with ``D`` the lcm of all entry denominators."""
    d = 1
    for row in m:
        for x in row:
            if isinstance(x, Fraction):
                d = lcm(d, x.denominator)
    out = []
    for row in m:
        out.append([int(x * d) if isinstance(x, Fraction) else x * d for x in row])
    return out, d


def _bareiss(m: List[List[int]]) -> int:
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot_row = m[k]
        pkk = pivot_row[k]
        tail = pivot_row[k + 1:]
        for i in range(k + 1, n):
            row = m[i]
            mik = row[k]
            if mik:
                row[k + 1:] = [(x * pkk - mik * y) // prev for x, y in zip(row[k + 1:], tail)]
            elif pkk != prev:
                row[k + 1:] = [x * pkk // prev for x in row[k + 1:]]
            row[k] = 0
        prev = pkk
    return sign * m[n - 1][n - 1] if n else 1


def determinant(m: Sequence[Sequence[Scalar]]) -> Scalar:
    """Exact determinant.

    Integer input goes straight through fraction-free (Bareiss)
    elimination; rational input is first scaled to an integer matrix.
    """
    rows, cols = shape(m)
    if rows != cols:
        raise DimensionError(f"determinant of non-square {rows}x{cols} matrix")
    work, d = clear_denominators(m)
    det = _bareiss(work)
    if d == 1:
        return det
    return normalize(Fraction(det, d ** rows))


def _as_int_matrix(m: Sequence[Sequence[Scalar]]) -> List[List[int]]:
    out = []
    for row in m:
        new = []
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise DomainError(f"non-integral entry {x}")
                x = x.numerator
            elif not isinstance(x, int):
                raise DomainError(f"unsupported entry {x!r}")
            new.append(x)
        out.append(new)
    return out


def _components(m: List[List[int]]) -> List[Tuple[List[int], List[int]]]:
    """Split the support of ``m`` into independent (rows, cols) blocks."""
    rows, cols = len(m), len(m[0]) if m else 0
    parent = list(range(rows + cols))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x:
                a, b = find(i), find(rows + j)
                if a != b:
                    parent[a] = b
    groups: dict = {}
    for i in range(rows):
        groups.setdefault(find(i), ([], []))[0].append(i)
    for j in range(cols):
        groups.setdefault(find(rows + j), ([], []))[1].append(j)
    return [g for g in groups.values() if g[0] and g[1]]


def _snf_diagonal(m: List[List[int]]) -> List[int]:
    """Diagonalize an integer matrix by unimodular row/column operations."""
    m = [row[:] for row in m]
    rows, cols = len(m), len(m[0]) if m else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = m[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        m[t], m[i] = m[i], m[t]
        for row in m:
            row[t], row[j] = row[j], row[t]
        while True:
            p = m[t][t]
            done = True
            for i in range(t + 1, rows):
                q = m[i][t]
                if q:
                    f = q // p
                    if f:
                        m[i] = [x - f * y for x, y in zip(m[i], m[t])]
                    if m[i][t]:
                        done = False
            prow = m[t]
            for j in range(t + 1, cols):
                q = prow[j]
                if q:
                    f = q // p
                    if f:
                        for row in m:
                            if row[t]:
                                row[j] -= f * row[t]
                    if prow[j]:
                        done = False
            if done:
                break
            # move the smallest remaining entry of row/column t into the pivot
            cand = [(abs(m[i][t]), i, t) for i in range(t, rows) if m[i][t]]
            cand += [(abs(m[t][j]), t, j) for j in range(t, cols) if m[t][j]]
            _, i, j = min(cand)
            if i != t:
                m[t], m[i] = m[i], m[t]
            if j != t:
                for row in m:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(m[t][t]))
        t += 1
    return diag


def _invariant_factors(diag: List[int]) -> List[int]:
    d = sorted(diag)
    n = len(d)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(i + 1, n):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def smith_normal_form(m: Sequence[Sequence[Scalar]]) -> Tuple[Tuple[int, ...], int]:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` and rank ``r``.

    >>> smith_normal_form([[2, 0], [0, 3]])
    ((1, 6), 2)
    """
    shape(m)
    work = _as_int_matrix(m)
    diag: List[int] = []
    for rs, cs in _components(work):
        block = [[work[i][j] for j in cs] for i in rs]
        diag.extend(_snf_diagonal(block))
    factors = _invariant_factors(diag)
    return tuple(factors), len(factors)


def _reduce_row(row: List[int]) -> List[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def solve_many(basis: Sequence[Sequence[Scalar]], targets: Sequence[Sequence[Scalar]]) -> Matrix:
    """Coordinates of every target row in the row basis ``basis``.

    Returns ``X`` with ``X * basis == targets`` exactly.
    """
    nb, dim = shape(basis)
    nt, dim_t = shape(targets) if targets else (0, dim)
    if nt and dim_t != dim:
        raise DimensionError("targets and basis live in different dimensions")
    if nb > dim:
        raise RankError(f"{nb} vectors in dimension {dim} are dependent")
    # Augmented system basis^T x = target^T, eliminated with integer rows.
    bt, db = clear_denominators(transpose(basis) if nb else [[] for _ in range(dim)])
    tt, dt = clear_denominators(transpose(targets) if nt else [[] for _ in range(dim)])
    rows = [_reduce_row(bt[i] + tt[i]) for i in range(dim)]
    pivots = []
    r = 0
    for c in range(nb):
        piv = None
        for i in range(r, dim):
            if rows[i][c]:
                if piv is None or abs(rows[i][c]) < abs(rows[piv][c]):
                    piv = i
        if piv is None:
            raise RankError("basis vectors are linearly dependent")
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        for i in range(dim):
            if i != r and rows[i][c]:
                q = rows[i][c]
                g = gcd(p, q)
                a, b = p // g, q // g
                rows[i] = _reduce_row([a * x - b * y for x, y in zip(rows[i], prow)])
        pivots.append(r)
        r += 1
    for i in range(r, dim):
        if any(rows[i][nb:]):
            raise UnsolvableError("target lies outside the span of the basis")
    scale = Fraction(db, dt)
    coords = [[Fraction(0)] * nb for _ in range(nt)]
    for c in range(nb):
        row = rows[c]
        p = row[c]
        for t in range(nt):
            coords[t][c] = normalize(Fraction(row[nb + t], p) * scale)
    return coords


def solve_in_basis(basis: Sequence[Sequence[Scalar]], target: Sequence[Scalar]) -> List[Scalar]:
    """Exact coordinates of ``target`` in the span of ``basis``.

    >>> solve_in_basis([[2, 0], [1, 1]], [3, 1])
    [1, 1]
    """
    return solve_many(basis, [list(target)])[0]


def relative_index(sub: Sequence[Sequence[Scalar]], sup: Sequence[Sequence[Scalar]]) -> int:
    """Index of the group spanned by ``sub`` inside the one spanned by ``sup``.

    Both are full-rank row bases in a common ambient coordinate system.
    The index is the product of the SNF invariant factors of the integer
    matrix expressing ``sub`` in ``sup`` coordinates.
    """
    if len(sub) != len(sup):
        raise RankError("sub- and super-lattice have different ranks")
    coords = solve_many(sup, sub)
    if not is_integral(coords):
        raise DomainError("first argument is not contained in the second")
    factors, rank = smith_normal_form(coords)
    if rank != len(sub):
        raise RankError("sublattice is not of full rank")
    out = 1
    for f in factors:
        out *= f
    return out
