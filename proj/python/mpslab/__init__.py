"""MPS analysis of fermionic states.

Orbitals are 1-based; permutations list, for each new position, the old
orbital placed there.
"""

from ._mpslab import (
    CIState,
    apply_permutation,
    bell_mps_dense,
    bell_state,
    best_order,
    bond_dims,
    certify_cut,
    export_csv,
    fiedler_order,
    max_sector_rank,
    mutual_information,
    pairing_permutation,
    prime_state,
    primes_below,
    random_state,
    singular_spectrum,
    slater_expand,
    tt_reconstruction_error,
    unfold,
    verify_bell,
    verify_prime,
)

__version__ = "0.3.0"

__all__ = [
    "CIState",
    "apply_permutation",
    "bell_mps_dense",
    "bell_state",
    "best_order",
    "bond_dims",
    "certify_cut",
    "export_csv",
    "fiedler_order",
    "max_sector_rank",
    "mutual_information",
    "pairing_permutation",
    "prime_state",
    "primes_below",
    "random_state",
    "singular_spectrum",
    "slater_expand",
    "tt_reconstruction_error",
    "unfold",
    "verify_bell",
    "verify_prime",
]
