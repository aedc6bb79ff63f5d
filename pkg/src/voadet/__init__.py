"""Exact Gram determinants of integral forms in lattice vertex operator algebras."""

from .combinatorics import (WeightVector, b_value, count_monomials, index_formula_value,
                            index_formula_weighted, n_exponent, s_value, weight_vectors)
from .detengine import det_al, det_al_closed, verify_theorem_4_4
from .lattice import BUILTIN_LATTICES, IntegerLattice, lattice_det, shell_counts
from .schur import a_basis, index_a_over_b, schur_coefficient
from .voa import voa_det_closed, voa_det_oracle, verify_theorem_5_1

__version__ = "0.1.0"
