"""Atomic representing measures for truncated bivariate moment problems."""

from .core import (AffineMap, AtomicMeasure, MomentMatrix, MomentSequence, build_moment_matrix,
                   monomial_basis, moments_of, riesz, transform_moments)
from .poly2d import BiPoly, parse_poly
from .variety import column_relations, compute_variety, consistency_check
from .solver import SolveOutcome, classify, solve, verify_measure

__version__ = "0.1.0"

__all__ = [
    "AffineMap", "AtomicMeasure", "BiPoly", "MomentMatrix", "MomentSequence", "SolveOutcome",
    "build_moment_matrix", "classify", "column_relations", "compute_variety", "consistency_check",
    "monomial_basis", "moments_of", "parse_poly", "riesz", "solve", "transform_moments", "verify_measure",
]
