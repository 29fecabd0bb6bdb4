"""Generalized cyclotomic binary sequences of period 2*p**n.

Construction of the two balanced families, exact linear-complexity
measurement by two independent methods, closed-form prediction, and a
numerical verification suite for the underlying root-of-unity identities.
"""

from .analysis import (ComplexityPrediction, VerificationRecord, check_conjecture,
                       default_grid, predict, sweep, verify_point)
from .cyclotomy import ClassTable, build_class_table, class_index_of, verify_partitions
from .gf2ext import FieldCtx, FieldElement, build_field, eval_poly
from .gf2poly import Gf2Poly, berlekamp_massey, formal_derivative, from_sequence, gcd, linear_complexity_gcd
from .ntheory import (PrimePowerCtx, compute_v, find_odd_primitive_root, index_of_two,
                      is_prime, multiplicative_order, wieferich_level)
from .sequence import BinarySequence, SequenceParams, build_support_sets, generate

__version__ = "0.1.0"

__all__ = [
    "BinarySequence",
    "ClassTable",
    "ComplexityPrediction",
    "FieldCtx",
    "FieldElement",
    "Gf2Poly",
    "PrimePowerCtx",
    "SequenceParams",
    "VerificationRecord",
    "berlekamp_massey",
    "build_class_table",
    "build_field",
    "build_support_sets",
    "check_conjecture",
    "class_index_of",
    "compute_v",
    "default_grid",
    "eval_poly",
    "find_odd_primitive_root",
    "formal_derivative",
    "from_sequence",
    "gcd",
    "generate",
    "index_of_two",
    "is_prime",
    "linear_complexity_gcd",
    "multiplicative_order",
    "predict",
    "sweep",
    "verify_partitions",
    "verify_point",
    "wieferich_level",
]
