"""Exact test for matrices whose ordinary powers equal their Hadamard powers.

Besides the yes/no decision, the package builds and independently verifies
three certificates: the weighted disjoint idempotent decomposition, the
permutation canonical form of the idempotents, and the biorthogonal
rank-one factorization.
"""

__version__ = "0.1.0"

from hadpow._backend import BACKEND
from hadpow.field import FieldSpec, Q, Scalar, characteristic_admits, parse_scalar, render_scalar
from hadpow.matrix import (
    Matrix,
    Permutation,
    Polynomial,
    hadamard_mul,
    hadamard_pow,
    mat_mul,
    mat_pow,
    minimal_polynomial,
    permute_similarity,
    poly_eval_hadamard,
    poly_eval_usual,
    rank,
)
from hadpow.coincidence import CoincidenceReport, check_finite, check_poly_equiv, check_up_to
from hadpow.decomposition import (
    IdempotentDecomposition,
    distinct_nonzero_entries,
    lagrange_polynomial,
    power_identity_check,
    spectral_decompose,
    verify_decomposition,
)
from hadpow.canonical import (
    CanonicalForm,
    IndexClassification,
    canonical_form,
    classify_indices,
    is_idempotent_01,
    reconstruct_idempotent,
)
from hadpow.rankone import RankOneDecomposition, rank_one_decompose, strip_permutation, verify_rank_one

__all__ = [
    "BACKEND",
    "CanonicalForm",
    "CoincidenceReport",
    "FieldSpec",
    "IdempotentDecomposition",
    "IndexClassification",
    "Matrix",
    "Permutation",
    "Polynomial",
    "Q",
    "RankOneDecomposition",
    "Scalar",
    "canonical_form",
    "characteristic_admits",
    "check_finite",
    "check_poly_equiv",
    "check_up_to",
    "classify_indices",
    "distinct_nonzero_entries",
    "hadamard_mul",
    "hadamard_pow",
    "is_idempotent_01",
    "lagrange_polynomial",
    "mat_mul",
    "mat_pow",
    "minimal_polynomial",
    "parse_scalar",
    "permute_similarity",
    "poly_eval_hadamard",
    "poly_eval_usual",
    "power_identity_check",
    "rank",
    "rank_one_decompose",
    "reconstruct_idempotent",
    "render_scalar",
    "spectral_decompose",
    "strip_permutation",
    "verify_decomposition",
    "verify_rank_one",
]
