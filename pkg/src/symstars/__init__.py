"""Stellar representation of symmetric states of k spin-s parties."""
from .spin import InputError, clebsch_gordan, generalized_characters, spin_operators, wigner_d
from .sympower import SymState, collective_generators, permanent, vee_product
from .irreps import block_diagonalizer, antisym_block_diagonalizer, multiplicities
from .majorana import constellation_to_state, majorana_roots, principal_constellation, vee_factorize
from .canonical import multiconstellation, reconstruct
from .isomorphisms import hermite, hodge_complement, murnaghan, murnaghan_inverse
from .entanglement import geometric_entanglement, gram_spectrum, rank_reduce, scan
from .rotosensor import averaged_fidelity, averaged_infinitesimal, fidelity, ghz_state, variance_about_axis

__version__ = "0.1.0"
