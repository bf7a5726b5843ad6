"""Value sets of polynomials over finite fields via cyclotomic mappings.

Finite-field arithmetic, index decompositions, exact value-set and occupancy
distributions, unions of random subsets, and a verification harness.
"""

__version__ = "0.1.0"

from .cyclo import CyclotomicMapping, value_set_brute, value_set_size_fast
from .dist import ExactDistribution, MomentTable
from .errors import (BudgetError, DomainError, IndexUndefinedError, InvariantViolation,
                     ValidationError, VslabError)
from .field import FieldSpec, build_field, field_for_order
from .poly import Polynomial, from_cyclotomic, index_decompose, to_cyclotomic
from .union import UnionModel

__all__ = [
    "BudgetError", "CyclotomicMapping", "DomainError", "ExactDistribution", "FieldSpec",
    "IndexUndefinedError", "InvariantViolation", "MomentTable", "Polynomial", "UnionModel",
    "ValidationError", "VslabError", "build_field", "field_for_order", "from_cyclotomic",
    "index_decompose", "to_cyclotomic", "value_set_brute", "value_set_size_fast",
]
