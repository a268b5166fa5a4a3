"""Finitely presented groups: coset enumeration, abelian invariants,
subgroup presentations and class-2 quotients."""

from .group import (
    DEFAULT_MAX_COSETS,
    KERNEL,
    AbelianInvariants,
    CosetTable,
    LimitExceeded,
    abelianization,
    coset_enumerate,
    derived_subgroup_presentation,
    element_order,
    index,
    is_closed,
    is_perfect,
    order,
    reidemeister_schreier,
    simplify,
    subgroup_presentation,
)
from .nilpotent import Class2Quotient, class2_quotient
from .presentation import FpPresentation, PresentationSyntaxError
from .snf import smith_normal_form

__all__ = [
    "DEFAULT_MAX_COSETS", "KERNEL", "AbelianInvariants", "CosetTable", "LimitExceeded",
    "abelianization", "coset_enumerate", "derived_subgroup_presentation", "element_order",
    "index", "is_closed", "is_perfect", "order", "reidemeister_schreier", "simplify",
    "subgroup_presentation", "Class2Quotient", "class2_quotient", "FpPresentation",
    "PresentationSyntaxError", "smith_normal_form",
]
