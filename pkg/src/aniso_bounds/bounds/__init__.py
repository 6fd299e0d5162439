"""Explicit bounds with citation anchors."""

from .citations import CITATIONS, cite
from .rules import CASES, KINDS, BoundQuery, BoundResult, assemble_bir_bound, evaluate, torsion_primes_for
from .table import ledger_table, table_queries

__all__ = ["CITATIONS", "cite", "CASES", "KINDS", "BoundQuery", "BoundResult", "assemble_bir_bound",
           "evaluate", "torsion_primes_for", "ledger_table", "table_queries"]
