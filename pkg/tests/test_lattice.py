import json
from itertools import product

import pytest

from voadet.lattice import (BUILTIN_LATTICES, IntegerLattice, LatticeError, change_basis,
                            coefficient_bounds, index_det_transfer, is_even, lattice_det,
                            lattice_from_json, lattice_vectors, shell_counts, shell_representatives,
                            sublattice_scale)

L = BUILTIN_LATTICES


def counts(lat, max_norm):
    return [s.count for s in shell_counts(lat, max_norm)]


def test_validation():
    with pytest.raises(LatticeError, match="order 1"):
        IntegerLattice(((0,),))
    with pytest.raises(LatticeError, match="symmetric"):
        IntegerLattice(((2, 1), (0, 2)))
    with pytest.raises(LatticeError, match="order 2"):
        IntegerLattice(((1, 2), (2, 1)))
    with pytest.raises(LatticeError, match="integers"):
        IntegerLattice(((1.5,),))


def test_lattice_det_examples():
    for k in range(1, 5):
        assert lattice_det(L[f"Z{k}"]) == 1
    assert lattice_det(L["A2"]) == 3
    for p in (2, 3):
        for k in (1, 2, 3):
            assert lattice_det(sublattice_scale(L[f"Z{k}"], [p] * k)) == p ** (2 * k)


def test_is_even():
    assert is_even(L["A1"])
    assert not is_even(L["Z3"])
    assert is_even(L["A2"])


def test_shell_counts_examples():
    assert counts(L["A1"], 4) == [1, 2, 0]
    assert counts(L["A2"], 2) == [1, 6]
    assert counts(L["2Z1"], 4) == [1, 0, 2]


def test_shell_counts_rejects_odd_norm():
    with pytest.raises(LatticeError):
        shell_counts(L["A1"], 3)


def _walk_counts(lat, max_norm, radius):
    """Enumerate a generous fixed box, independent of the computed bounds."""
    out = {}
    for c in product(range(-radius, radius + 1), repeat=lat.rank):
        nv = lat.norm(c)
        if nv <= max_norm:
            out[nv] = out.get(nv, 0) + 1
    return [out.get(nv, 0) for nv in range(0, max_norm + 1, 2)]


def test_z2_even_shells_two_ways():
    assert counts(L["Z2"], 2) == [1, 4]
    assert _walk_counts(L["Z2"], 2, 4) == [1, 4]


@pytest.mark.parametrize("name", ["A1", "A2", "A1A1", "A3", "2Z1Z1"])
def test_shell_counts_against_big_box(name):
    lat = L[name]
    assert counts(lat, 8) == _walk_counts(lat, 8, 6)


def test_bounds_are_sufficient_for_skewed_basis():
    # A2 on a skewed basis needs larger coefficients for the same vectors
    u = [[1, 0], [3, 1]]
    skew = change_basis(L["A2"], u)
    assert counts(skew, 8) == counts(L["A2"], 8)
    assert max(coefficient_bounds(skew, 8)) >= 4


@pytest.mark.parametrize("u", [[[1, 1], [0, 1]], [[2, 1], [1, 1]], [[0, 1], [-1, 0]]])
def test_shells_invariant_under_unimodular_change(u):
    for name in ("A2", "A1A1", "Z2"):
        assert counts(change_basis(L[name], u), 8) == counts(L[name], 8)
        assert lattice_det(change_basis(L[name], u)) == lattice_det(L[name])


def test_shell_representatives_split_pairs():
    vecs = lattice_vectors(L["A2"], 2)[2]
    reps = shell_representatives(vecs)
    assert len(reps) * 2 == len(vecs)
    assert sorted(reps + [tuple(-c for c in v) for v in reps]) == sorted(vecs)


def test_sublattice_scale():
    assert sublattice_scale(L["Z3"], [5, 1, 1]).gram == ((25, 0, 0), (0, 1, 0), (0, 0, 1))
    assert sublattice_scale(L["A1"], [2]).gram == ((8,),)
    assert sublattice_scale(L["A2"], [1, 1]).gram == L["A2"].gram


@pytest.mark.parametrize("name", sorted(BUILTIN_LATTICES))
def test_det_transfer_for_scaled_sublattices(name):
    lat = L[name]
    for scales in ([2] + [1] * (lat.rank - 1), [3] * lat.rank, list(range(1, lat.rank + 1))):
        index = 1
        for s in scales:
            index *= s
        assert lattice_det(sublattice_scale(lat, scales)) == index_det_transfer(lattice_det(lat), index)


def test_index_det_transfer_examples():
    assert index_det_transfer(1, 7) == 49
    assert index_det_transfer(3, 2) == 12
    assert index_det_transfer(5, 1) == 5


def test_json_roundtrip():
    lat = lattice_from_json(json.dumps({"name": "D", "gram": [[2, 0], [0, 4]]}))
    assert lat.name == "D" and lattice_det(lat) == 8
    with pytest.raises(LatticeError):
        lattice_from_json('{"name": "x"}')
    with pytest.raises(json.JSONDecodeError):
        lattice_from_json('{"gram": [[1]')
