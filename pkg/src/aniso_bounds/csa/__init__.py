"""Central simple algebra mechanics: the char-p Weyl division algebra, cyclotomic
minimal polynomials, and exponent audits for finite matrix groups."""

from .audit import (
    AuditReport,
    FiniteMatrixGroup,
    audit_sweep,
    exponent_bound_audit,
    general_linear,
    gl,
    pgl,
    projective_linear,
    subgroup_sweep,
)
from .cyclotomic import CyclotomicField, CyclotomicMatrix, minimal_polynomial, minpoly_structure
from .weyl import WeylAlgebraElement, ad_solve, centralizes_generators, weyl_identity_check, weyl_normal_form

__all__ = [
    "AuditReport", "FiniteMatrixGroup", "audit_sweep", "exponent_bound_audit", "general_linear",
    "gl", "pgl", "projective_linear", "subgroup_sweep",
    "CyclotomicField", "CyclotomicMatrix", "minimal_polynomial", "minpoly_structure",
    "WeylAlgebraElement", "ad_solve", "centralizes_generators", "weyl_identity_check",
    "weyl_normal_form",
]
