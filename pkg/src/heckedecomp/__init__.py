"""Decomposition matrices, blocks and basic sets of cyclotomic Hecke algebras."""

from .basicsets import a_values, canonical_basic_set, conjecture_audit, generic_degrees, optimal_basic_set
from .blocks import block_partition, lambda_partition, lambda_table, verify_central
from .decomp import decomposition_matrix, word_basis
from .exactnum import E, Cyclotomic, RootOfUnity
from .heckedata import load_dataset, validate_dataset
from .laurent import LaurentPoly
from .speceng import Specialization, critical_orders, q_specialization, spec_report

__all__ = [
    "Cyclotomic",
    "E",
    "LaurentPoly",
    "RootOfUnity",
    "Specialization",
    "a_values",
    "block_partition",
    "canonical_basic_set",
    "conjecture_audit",
    "critical_orders",
    "decomposition_matrix",
    "generic_degrees",
    "lambda_partition",
    "lambda_table",
    "load_dataset",
    "optimal_basic_set",
    "q_specialization",
    "spec_report",
    "validate_dataset",
    "verify_central",
    "word_basis",
]

__version__ = "0.1.0"
