"""Finite subgroups of birational automorphism groups: exact computations and bounds."""

__version__ = "0.1.0"
