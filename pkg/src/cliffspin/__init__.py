"""Explicit Clifford algebra realizations over the division algebras.

Exact octonion arithmetic, signed-permutation generator matrices for Cl_n on
its spinor spaces, decomposition witnesses for the Hardy-space problem and
their obstructions, and FFT checks of the Riesz/Cauchy boundary operators.
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .clifford import (
    CliffordRealization,
    RelationReport,
    a_op,
    build,
    clifford_conj_sign,
    dichotomy_check,
    e_k,
    e_op,
    left_mult_matrix,
    m_op,
    right_mult_matrix,
    spinor_dim,
    verify_relations,
    volume_element,
)
from .errors import (
    CliffspinError,
    DimensionMismatch,
    MaxDimensionExceeded,
    ObstructedDimension,
    QuadratureError,
    UnsupportedDimension,
    ZeroVectorError,
)
from .gilbert import (
    GilbertWitness,
    check_gilbert,
    dim_obstruction,
    even_generators,
    mixed_signature_check,
    spinning_evidence,
    standard_witness,
)
from .hypercomplex import Hypercomplex, associator, cd_mul, conj, inner, re
from .linalg import ExactMatrix, SignedPerm, Subspace, direct_sum_check, image, kron, spin_submodule

__all__ = [
    "BACKEND",
    "CliffordRealization",
    "CliffspinError",
    "DimensionMismatch",
    "ExactMatrix",
    "GilbertWitness",
    "Hypercomplex",
    "MaxDimensionExceeded",
    "ObstructedDimension",
    "QuadratureError",
    "RelationReport",
    "SignedPerm",
    "Subspace",
    "UnsupportedDimension",
    "ZeroVectorError",
    "a_op",
    "associator",
    "build",
    "cd_mul",
    "check_gilbert",
    "clifford_conj_sign",
    "conj",
    "dichotomy_check",
    "dim_obstruction",
    "direct_sum_check",
    "e_k",
    "e_op",
    "even_generators",
    "image",
    "inner",
    "kron",
    "left_mult_matrix",
    "m_op",
    "mixed_signature_check",
    "re",
    "right_mult_matrix",
    "spin_submodule",
    "spinning_evidence",
    "spinor_dim",
    "standard_witness",
    "verify_relations",
    "volume_element",
]
