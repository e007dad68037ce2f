"""Solution routes for truncated moment problems and the top-level dispatch."""

from .outcome import CaseTag, INCONCLUSIVE, MEASURE, NO_MEASURE, SolveOutcome
from .flat import extract_flat_measure
from .extremal import solve_extremal
from .rank7 import solve_rank7
from .rank8 import solve_rank8_v9, solve_rank8_vinf
from .separation import solve_x2x, solve_xy0, x2x_quantities, xy0_quantities
from .conic import solve_conic
from .dispatch import classify, solve
from .verify import VerifyReport, verify_measure

__all__ = [
    "CaseTag", "INCONCLUSIVE", "MEASURE", "NO_MEASURE", "SolveOutcome", "VerifyReport",
    "classify", "extract_flat_measure", "solve", "solve_conic", "solve_extremal", "solve_rank7",
    "solve_rank8_v9", "solve_rank8_vinf", "solve_x2x", "solve_xy0", "verify_measure",
    "x2x_quantities", "xy0_quantities",
]
