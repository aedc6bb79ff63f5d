import pytest

from voadet.combinatorics import fock_dimension, s_value
from voadet.detengine import det_al
from voadet.exactlinalg import determinant
from voadet.lattice import BUILTIN_LATTICES, LatticeError, lattice_vectors
from voadet.voa import (block_product_det, full_gram, graded_piece, verify_theorem_5_1, voa_det_closed,
                        voa_det_oracle, voa_graded_rank)

L = BUILTIN_LATTICES


def test_graded_rank_examples():
    assert [voa_graded_rank(L["A1"], n) for n in range(3)] == [1, 3, 4]


def test_odd_lattice_rejected():
    with pytest.raises(LatticeError, match="even lattice required"):
        voa_graded_rank(L["I1"], 1)
    with pytest.raises(LatticeError):
        verify_theorem_5_1(L["Z2"], 1)


def test_oracle_examples():
    assert [voa_det_oracle(L["A1"], n) for n in range(3)] == [1, 2, 32]
    assert voa_det_oracle(L["A1A1"], 1) == 4


def test_closed_examples():
    assert voa_det_closed(L["A1"], 2, "S") == 2 ** 3 * 2 ** 2 == 32
    assert voa_det_closed(L["A1"], 2, "2S") == 1024
    for name in ("A1", "A2", "A1A1"):
        assert voa_det_closed(L[name], 0, "S") == voa_det_closed(L[name], 0, "2S") == 1


def test_scaled_a1_uses_norm_four_shell():
    lat = L["2Z1"]  # Gram [[4]]: |L_2| = 0, |L_4| = 2
    piece = graded_piece(lat, 2)
    assert piece.shell_sizes() == [1, 0, 2]
    assert voa_det_oracle(lat, 2) == det_al(lat, 2) * det_al(lat, 0) ** 2 == 4 ** 3


def test_verify_examples():
    rows = verify_theorem_5_1(L["A1"], 2)
    assert [r.oracle_det for r in rows] == [1, 2, 32]
    assert all("S" in r.matches for r in rows)
    assert rows[1].matches == ["S"]


@pytest.mark.parametrize("name,n_max", [("A1", 3), ("A1A1", 3), ("A2", 2), ("2Z1", 3)])
def test_full_gram_equals_block_product(name, n_max):
    for n in range(n_max + 1):
        _, mat = full_gram(L[name], n)
        assert abs(determinant(mat)) == block_product_det(L[name], n)


@pytest.mark.parametrize("name", ["A1", "A1A1", "A2"])
def test_rank_bookkeeping(name):
    lat = L[name]
    for n in range(4):
        vecs = lattice_vectors(lat, 2 * n)
        want = sum(len(vecs.get(2 * m, [])) * fock_dimension(lat.rank, n - m) for m in range(n + 1))
        assert voa_graded_rank(lat, n) == want
        labels, _ = full_gram(lat, n)
        assert len(labels) == want


def test_blocks_present_iff_shell_fits():
    piece = graded_piece(L["A1A1"], 2)
    assert sorted({b.shell for b in piece.blocks}) == [0, 1, 2]
    assert all(b.fock_weight == 2 - b.shell for b in piece.blocks)
    assert len(graded_piece(L["A1"], 3).blocks) == 2  # norms 4 and 6 are empty for A1


def test_cross_block_pairings_vanish():
    labels, mat = full_gram(L["A1A1"], 2)
    for i, (a, _) in enumerate(labels):
        for j, (b, _) in enumerate(labels):
            if tuple(x + y for x, y in zip(a, b)) != (0, 0):
                assert mat[i][j] == 0


def test_each_pair_block_is_squared_al_det():
    lat = L["A2"]
    n = 2
    labels, mat = full_gram(lat, n)
    for block in graded_piece(lat, n).blocks:
        if block.shell == 0:
            continue
        pair = {block.alpha, tuple(-c for c in block.alpha)}
        idx = [i for i, (a, _) in enumerate(labels) if a in pair]
        sub = [[mat[i][j] for j in idx] for i in idx]
        assert abs(determinant(sub)) == det_al(lat, block.fock_weight) ** 2


@pytest.mark.parametrize("name", ["A1", "A2", "A1A1", "2Z1"])
def test_mode_plumbing(name):
    for n in range(4):
        assert voa_det_closed(L[name], n, "S") ** 2 == voa_det_closed(L[name], n, "2S")


def test_vacuum_block_first_power():
    lat = L["A1"]
    for n in range(1, 4):
        sizes = graded_piece(lat, n).shell_sizes()
        exponent = sum(sizes[m] * s_value(1, n - m) for m in range(n + 1))
        assert voa_det_oracle(lat, n) == 2 ** exponent
