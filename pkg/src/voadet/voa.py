"""Graded pieces of the standard integral form of a lattice VOA and their determinants.

The weight-``n`` piece is spanned by ``u (x) e^alpha`` with ``u`` in the
A-basis of weight ``n - m`` and ``<alpha, alpha> = 2m``.  The form pairs
``u (x) e^alpha`` with ``v (x) e^beta`` to ``<u|v>`` when ``alpha + beta = 0``
and to zero otherwise.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Dict, List, Sequence, Tuple

from .combinatorics import fock_dimension, s_value
from .detengine import DEFAULT_BUDGET, MODES, SizeError, check_budget, det_al, sign
from .exactlinalg import determinant
from .fock import gram_matrix
from .lattice import IntegerLattice, LatticeError, is_even, lattice_det, lattice_vectors, shell_representatives
from .schur import a_basis

Vector = Tuple[int, ...]


def require_even(lat: IntegerLattice) -> None:
    if not is_even(lat):
        raise LatticeError(f"even lattice required; {lat.name or 'lattice'} is odd")


@dataclass
class VoaBlock:
    """The block W^alpha at a given weight: A_L(fock_weight) tensored with e^{+-alpha}."""

    alpha: Vector
    shell: int
    fock_weight: int

    @property
    def is_vacuum_sector(self) -> bool:
        return self.shell == 0


@dataclass
class VoaGradedPiece:
    lattice: IntegerLattice
    n: int
    shells: Dict[int, List[Vector]]
    blocks: List[VoaBlock]

    @property
    def rank(self) -> int:
        k = self.lattice.rank
        return sum(len(self.shells.get(m, [])) * fock_dimension(k, self.n - m)
                   for m in range(self.n + 1))

    def shell_sizes(self) -> List[int]:
        return [len(self.shells.get(m, [])) for m in range(self.n + 1)]


def graded_piece(lat: IntegerLattice, n: int) -> VoaGradedPiece:
    require_even(lat)
    vecs = lattice_vectors(lat, 2 * n)
    shells = {m: vecs.get(2 * m, []) for m in range(n + 1)}
    blocks = []
    for m in range(n + 1):
        reps = [tuple(0 for _ in range(lat.rank))] if m == 0 else shell_representatives(shells[m])
        for alpha in reps:
            blocks.append(VoaBlock(alpha, m, n - m))
    return VoaGradedPiece(lat, n, shells, blocks)


def voa_graded_rank(lat: IntegerLattice, n: int) -> int:
    return graded_piece(lat, n).rank


def _piece_budget(piece: VoaGradedPiece, budget: int) -> None:
    if piece.rank > budget:
        raise SizeError(piece.rank, budget, f"(V_L)_Z,{piece.n}")
    for m in range(piece.n + 1):
        if piece.shells.get(m):
            check_budget(piece.lattice.rank, piece.n - m, budget)


def block_product_det(lat: IntegerLattice, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """|det| assembled block by block: det A_L(n) once, det A_L(n-m)^2 per +-pair."""
    piece = graded_piece(lat, n)
    _piece_budget(piece, budget)
    out = 1
    for block in piece.blocks:
        d = det_al(lat, block.fock_weight, budget)
        out *= d if block.is_vacuum_sector else d * d
    return out


def full_gram(lat: IntegerLattice, n: int, budget: int = DEFAULT_BUDGET):
    """Gram matrix of the whole weight-``n`` piece, with its basis labels."""
    piece = graded_piece(lat, n)
    _piece_budget(piece, budget)
    labels: List[Tuple[Vector, int]] = []
    grams = {}
    for m in range(n + 1):
        if not piece.shells[m]:
            continue
        grams[m] = gram_matrix(a_basis(lat.rank, n - m).elements, lat.as_lists())
        for alpha in piece.shells[m]:
            for t in range(len(grams[m])):
                labels.append((alpha, t))
    where = {(alpha, t): pos for pos, (alpha, t) in enumerate(labels)}
    size = len(labels)
    mat = [[0] * size for _ in range(size)]
    for pos, (alpha, t) in enumerate(labels):
        m = lat.norm(alpha) // 2
        neg = tuple(-c for c in alpha)
        g = grams[m]
        for s in range(len(g)):
            mat[pos][where[(neg, s)]] = g[t][s]
    return labels, mat


def full_gram_det_signed(lat: IntegerLattice, n: int, budget: int = DEFAULT_BUDGET) -> int:
    _, mat = full_gram(lat, n, budget)
    return determinant(mat)


def voa_det_closed(lat: IntegerLattice, n: int, exponent_mode: str, shell_sizes: Sequence[int] = None) -> int:
    """``prod_m det(L)^(|L_2m| * e(n-m))`` with ``e = S`` or ``e = 2S``."""
    if exponent_mode not in MODES:
        raise ValueError(f"unknown exponent mode {exponent_mode!r}")
    if shell_sizes is None:
        shell_sizes = graded_piece(lat, n).shell_sizes()
    factor = 1 if exponent_mode == "S" else 2
    d = lattice_det(lat)
    k = lat.rank
    exponent = sum(shell_sizes[m] * factor * s_value(k, n - m) for m in range(n + 1))
    return d ** exponent


@dataclass
class VoaDetReport:
    lattice: str
    n: int
    rank: int
    det_lattice: int
    graded_rank: int
    shell_counts: List[int]
    oracle_det: int
    full_gram_det: int
    gram_sign: int
    closed_S: int
    closed_2S: int
    matches: List[str]
    oracles_agree: bool = field(default=True)

    def to_dict(self) -> dict:
        return asdict(self)


def voa_det_oracle(lat: IntegerLattice, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Block-product determinant, cross-checked against the full Gram matrix."""
    blocks = block_product_det(lat, n, budget)
    full = abs(full_gram_det_signed(lat, n, budget))
    if blocks != full:
        raise ArithmeticError(f"block product {blocks} != full Gram {full} at n={n}")
    return blocks


def voa_report(lat: IntegerLattice, n: int, budget: int = DEFAULT_BUDGET) -> VoaDetReport:
    piece = graded_piece(lat, n)
    blocks = block_product_det(lat, n, budget)
    signed = full_gram_det_signed(lat, n, budget)
    sizes = piece.shell_sizes()
    closed = {m: voa_det_closed(lat, n, m, sizes) for m in MODES}
    return VoaDetReport(
        lattice=lat.name,
        n=n,
        rank=lat.rank,
        det_lattice=lattice_det(lat),
        graded_rank=piece.rank,
        shell_counts=sizes,
        oracle_det=blocks,
        full_gram_det=abs(signed),
        gram_sign=sign(signed),
        closed_S=closed["S"],
        closed_2S=closed["2S"],
        matches=[m for m in MODES if closed[m] == blocks],
        oracles_agree=blocks == abs(signed),
    )


def verify_theorem_5_1(lat: IntegerLattice, n_max: int, budget: int = DEFAULT_BUDGET) -> List[VoaDetReport]:
    require_even(lat)
    return [voa_report(lat, n, budget) for n in range(n_max + 1)]
