"""Finite-category engine: factorization systems, prefibrations, torsion theories.

Categories are explicit composition tables; every verdict the engine
produces is decided by exhaustive enumeration and carries a reproducible
witness on failure.
"""

from .core import (
    AuditError,
    FinCat,
    Functor,
    MorClass,
    PreconditionError,
    ResourceBudgetError,
    StructuralError,
    UnsupportedStructureError,
    ValidationReport,
    iso_class,
    opposite,
    validate_category,
    validate_functor,
)

__version__ = "0.1.0"

__all__ = [
    "AuditError",
    "FinCat",
    "Functor",
    "MorClass",
    "PreconditionError",
    "ResourceBudgetError",
    "StructuralError",
    "UnsupportedStructureError",
    "ValidationReport",
    "iso_class",
    "opposite",
    "validate_category",
    "validate_functor",
    "__version__",
]
