"""Exact computation in lattice vertex (super)algebras and the two-generator algebras D_{m,k}."""

from .cocycle import TwoCocycle, build_standard_cocycle, verify_cocycle
from .fock import LatticeVOA, State, charge, format_state, heisenberg_act, parse_state, parity, vacuum, weight
from .fusion import FusionElement, count_irreducibles, fuse, fuse_affine, fuse_lattice
from .lattice import Lattice, LatticeElement, change_of_basis, inner, make_lattice, named_lattice
from .structures import (
    dmk_generators,
    dmk_H,
    dmk_virasoro,
    konst_weight,
    section5_vectors,
    sl2_generators,
    standard_virasoro,
)
from .subalgebra import Window, character, close, contains, reg_sub_product
from .vertex import central_charge, lattice_mode, mode, mode_naive, schur_apply, virasoro_mode

__version__ = "0.1.0"
