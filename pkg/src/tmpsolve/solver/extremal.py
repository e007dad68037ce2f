"""Extremal data (rank M(n) = card V): the measure must sit on all of V."""

from .. import exactla as la
from ..core import AtomicMeasure, monomial_basis
from ..variety import consistency_check, vandermonde
from .common import matrix
from .outcome import SolveOutcome


def solve_extremal(beta, V, tol=None):
    """Densities on the points of a finite variety from the full Riesz system."""
    if not V.is_finite:
        raise ValueError("extremal route needs a finite variety")
    if not la.psd(matrix(beta), tol):
        return SolveOutcome.refuted("not-psd", route="extremal")
    if beta.exact and not V.exact:
        return SolveOutcome.unknown("irrational-variety", route="extremal", points=list(V.points))
    if not consistency_check(beta, V, tol):
        return SolveOutcome.refuted("inconsistent", route="extremal", points=list(V.points))
    pts = list(V.points)
    E = vandermonde(pts, beta.order)
    rhs = [beta[m] for m in monomial_basis(beta.order)]
    rho = la.solve_consistent(E.T, rhs, tol)
    if rho is None:
        return SolveOutcome.refuted("inconsistent", route="extremal", points=pts)
    if any(w <= 0 for w in rho):
        return SolveOutcome.refuted("negative-density", route="extremal", points=pts, densities=list(rho))
    mu = AtomicMeasure([(x, y, w) for (x, y), w in zip(pts, rho)])
    return SolveOutcome.found(mu, route="extremal", points=pts, densities=list(rho))
