"""Positive definite integral lattices given by Gram matrices."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Dict, List, Optional, Sequence, Tuple

from .exactlinalg import determinant, matmul, solve_many, transpose


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class IntegerLattice:
    gram: Tuple[Tuple[int, ...], ...]
    name: str = ""

    def __post_init__(self):
        gram = tuple(tuple(row) for row in self.gram)
        object.__setattr__(self, "gram", gram)
        k = len(gram)
        if k == 0:
            raise LatticeError("lattice must have positive rank")
        for row in gram:
            if len(row) != k:
                raise LatticeError("Gram matrix must be square")
            for x in row:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise LatticeError(f"Gram entries must be integers, got {x!r}")
        for i in range(k):
            for j in range(i):
                if gram[i][j] != gram[j][i]:
                    raise LatticeError(f"Gram matrix is not symmetric at ({i}, {j})")
        for t in range(1, k + 1):
            minor = determinant([list(row[:t]) for row in gram[:t]])
            if minor <= 0:
                raise LatticeError(f"Gram matrix is not positive definite: "
                                   f"leading principal minor of order {t} is {minor}")

    @property
    def rank(self) -> int:
        return len(self.gram)

    def norm(self, coeffs: Sequence[int]) -> int:
        g = self.gram
        return sum(coeffs[i] * g[i][j] * coeffs[j]
                   for i in range(self.rank) if coeffs[i]
                   for j in range(self.rank) if coeffs[j])

    def as_lists(self) -> List[List[int]]:
        return [list(row) for row in self.gram]


def lattice_det(lat: IntegerLattice) -> int:
    return determinant(lat.as_lists())


def is_even(lat: IntegerLattice) -> bool:
    return all(lat.gram[i][i] % 2 == 0 for i in range(lat.rank))


def _diag(entries: Sequence[int], name: str) -> IntegerLattice:
    k = len(entries)
    return IntegerLattice(tuple(tuple(entries[i] if i == j else 0 for j in range(k))
                                for i in range(k)), name)


def orthogonal_sum(a: IntegerLattice, b: IntegerLattice, name: str = "") -> IntegerLattice:
    k, m = a.rank, b.rank
    rows = [list(r) + [0] * m for r in a.gram] + [[0] * k + list(r) for r in b.gram]
    return IntegerLattice(tuple(map(tuple, rows)), name or f"{a.name}+{b.name}")


def _builtins() -> Dict[str, IntegerLattice]:
    out = {}
    for k in range(1, 5):
        out[f"Z{k}"] = _diag([1] * k, f"Z{k}")
    out["I1"] = _diag([1], "I1")
    out["A1"] = IntegerLattice(((2,),), "A1")
    out["A2"] = IntegerLattice(((2, 1), (1, 2)), "A2")
    out["A1A1"] = orthogonal_sum(out["A1"], out["A1"], "A1A1")
    out["A3"] = IntegerLattice(((2, -1, 0), (-1, 2, -1), (0, -1, 2)), "A3")
    out["2Z1"] = _diag([4], "2Z1")
    out["2Z1Z1"] = _diag([4, 1], "2Z1Z1")
    out["2A1"] = _diag([8], "2A1")
    return out


BUILTIN_LATTICES: Dict[str, IntegerLattice] = _builtins()


def lattice_from_json(text: str, default_name: str = "") -> IntegerLattice:
    """Parse ``{"name": ..., "gram": [[int, ...], ...]}``.

    Raises :class:`json.JSONDecodeError` (with line/column) on malformed
    input and :class:`LatticeError` on schema or validity problems.
    """
    data = json.loads(text)
    if not isinstance(data, dict) or "gram" not in data:
        raise LatticeError('lattice JSON must be an object with a "gram" field')
    gram = data["gram"]
    if not isinstance(gram, list) or not all(isinstance(r, list) for r in gram):
        raise LatticeError('"gram" must be a list of lists of integers')
    name = data.get("name", default_name)
    if not isinstance(name, str):
        raise LatticeError('"name" must be a string')
    return IntegerLattice(tuple(tuple(r) for r in gram), name)


def load_lattice(source: str) -> IntegerLattice:
    """A built-in lattice by name, or a JSON file path."""
    if source in BUILTIN_LATTICES:
        return BUILTIN_LATTICES[source]
    try:
        with open(source) as fh:
            text = fh.read()
    except OSError as exc:
        known = ", ".join(sorted(BUILTIN_LATTICES))
        raise LatticeError(f"unknown lattice {source!r} (built-ins: {known})") from exc
    return lattice_from_json(text, default_name=source)


def coefficient_bounds(lat: IntegerLattice, max_norm: int) -> List[int]:
    """Per-coordinate bounds for the vectors of norm at most ``max_norm``.

    For ``v = sum c_i x_i``, Cauchy-Schwarz in the dual basis gives
    ``c_i^2 <= (G^-1)_ii * <v,v>``, evaluated exactly.
    """
    k = lat.rank
    inv = solve_many(lat.as_lists(), [[int(i == j) for j in range(k)] for i in range(k)])
    out = []
    for i in range(k):
        q = Fraction(inv[i][i]) * max_norm
        b = isqrt(q.numerator // q.denominator)
        while (b + 1) ** 2 <= q:
            b += 1
        out.append(b)
    return out


def lattice_vectors(lat: IntegerLattice, max_norm: int) -> Dict[int, List[Tuple[int, ...]]]:
    """All coefficient vectors of norm at most ``max_norm``, grouped by norm."""
    bounds = coefficient_bounds(lat, max_norm)
    out: Dict[int, List[Tuple[int, ...]]] = {}
    for coeffs in product(*(range(-b, b + 1) for b in bounds)):
        nv = lat.norm(coeffs)
        if nv <= max_norm:
            out.setdefault(nv, []).append(coeffs)
    for vs in out.values():
        vs.sort()
    return out


@dataclass(frozen=True)
class ShellCount:
    norm: int
    count: int


def shell_counts(lat: IntegerLattice, max_norm: int) -> List[ShellCount]:
    """Counts ``|L_{2m}|`` for every even norm ``0, 2, ..., max_norm``."""
    if max_norm < 0 or max_norm % 2:
        raise LatticeError("max_norm must be a nonnegative even integer")
    vecs = lattice_vectors(lat, max_norm)
    return [ShellCount(nv, len(vecs.get(nv, []))) for nv in range(0, max_norm + 1, 2)]


def shell_representatives(vectors: Sequence[Tuple[int, ...]]) -> List[Tuple[int, ...]]:
    """One vector from each +/- pair: the one whose first nonzero entry is positive."""
    reps = []
    for v in vectors:
        first = next((c for c in v if c), 0)
        if first > 0:
            reps.append(v)
    return sorted(reps)


def sublattice_scale(lat: IntegerLattice, scales: Sequence[int], name: Optional[str] = None) -> IntegerLattice:
    """Sublattice spanned by ``scales[i] * x_i``."""
    if len(scales) != lat.rank:
        raise LatticeError("need one scale per basis vector")
    if any(s < 1 for s in scales):
        raise LatticeError("scales must be positive integers")
    g = lat.gram
    k = lat.rank
    gram = tuple(tuple(g[i][j] * scales[i] * scales[j] for j in range(k)) for i in range(k))
    if name is None:
        name = lat.name if all(s == 1 for s in scales) else f"{lat.name}*{tuple(scales)}"
    return IntegerLattice(gram, name)


def change_basis(lat: IntegerLattice, u: Sequence[Sequence[int]], name: Optional[str] = None) -> IntegerLattice:
    """The same lattice on the basis ``y_i = sum_j u[i][j] x_j``: Gram ``U G U^T``."""
    gram = matmul(matmul(u, lat.as_lists()), transpose(u))
    return IntegerLattice(tuple(tuple(int(x) for x in r) for r in gram),
                          lat.name if name is None else name)


def index_det_transfer(det_super: int, index: int) -> int:
    """Determinant of a sublattice of index ``index`` in a lattice of determinant ``det_super``."""
    if det_super < 1 or index < 1:
        raise LatticeError("inputs must be positive")
    return index * index * det_super
