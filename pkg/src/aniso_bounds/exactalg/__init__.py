"""Exact linear algebra over Z, Z/mZ, Q and small finite fields."""

from .fields import GF, QQ, FiniteField, Rationals, field_from_json, smallest_irreducible
from .intmat import (
    IntMatrix,
    ModMatrix,
    charpoly,
    cyclotomic,
    cyclotomic_orders,
    euler_phi,
    finite_order_exponent,
    matrix_order,
)
from .snf import (
    FixedModule,
    SnfDecomposition,
    additive_order,
    fixed_module,
    hermite_rows,
    integer_kernel,
    invariant_sublattice,
    kernel_mod,
    smith_rect,
    snf,
)

__all__ = [
    "GF", "QQ", "FiniteField", "Rationals", "field_from_json", "smallest_irreducible",
    "IntMatrix", "ModMatrix", "charpoly", "cyclotomic", "cyclotomic_orders", "euler_phi",
    "finite_order_exponent", "matrix_order",
    "FixedModule", "SnfDecomposition", "additive_order", "fixed_module", "hermite_rows",
    "integer_kernel", "invariant_sublattice", "kernel_mod", "smith_rect", "snf",
]
