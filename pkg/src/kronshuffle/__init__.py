"""Shuffling permutations on mixed-radix index sets and their uses:
Kronecker factor rearrangement, generated permutation groups, and block
factorizations of the DFT matrix."""
from .mixed_radix import BranchIndices, DigitWord, LimitExceeded, decode, encode, weight_vector
from .permutation import Permutation, format_cycles, parse_cycles
from .shuffling import (
    ShuffleSpec,
    common_fixed,
    compose_shuffles,
    perfect_shuffle,
    sh_k,
    shuffle_matrix_oracle,
    shuffle_perm,
)
from .rearrange import conjugate_kron, left_matrix, rearrange_kron, right_matrix
from .groups import closure, gsh_group, k_group, totient
from .dft import (
    OmegaMatrix,
    dft_matrix,
    fft,
    fft_plan,
    naive_dft,
    radix_identity_check,
    theorem_blocks,
    verify_factorization,
)

__version__ = "0.1.0"
