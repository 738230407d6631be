"""Peirce structure of finite rings: idempotent classification, Peirce
dimension, canonical decompositions and radicals."""

from .constructors import (
    GenMatrixSpec,
    diag,
    direct_product,
    from_matrix,
    gen_matrix,
    gf,
    matrix_ring,
    matrix_unit,
    submatrix_ring,
    to_matrix,
    triangular_ring,
    zmod,
)
from .gallery import gallery
from .ideals import EXCEEDS_CAP, corner_ring, ideal, nilpotency_index, quotient_ring
from .peirce import (
    classify_peirce,
    complete_one_peirce_set,
    enumerate_idempotents,
    is_peirce_trivial,
    one_peirce_criterion,
    orthogonal_split,
    peirce_dimension,
)
from .radical import b_dimension, jacobson_radical, lift_idempotent, prime_radical
from .ring import FiniteRing, verify_axioms

__all__ = [
    "EXCEEDS_CAP", "FiniteRing", "GenMatrixSpec", "b_dimension", "classify_peirce",
    "complete_one_peirce_set", "corner_ring", "diag", "direct_product", "enumerate_idempotents",
    "from_matrix", "gallery", "gen_matrix", "gf", "ideal", "is_peirce_trivial",
    "jacobson_radical", "lift_idempotent", "matrix_ring", "matrix_unit", "nilpotency_index",
    "one_peirce_criterion", "orthogonal_split", "peirce_dimension", "prime_radical",
    "quotient_ring", "submatrix_ring", "to_matrix", "triangular_ring", "verify_axioms", "zmod",
]
