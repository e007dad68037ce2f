"""Rank-7 sextic data: peel one variety point, then extract a flat residual."""

from .. import exactla as la
from ..core import AtomicMeasure
from ..errors import InconclusiveError, NoMeasureError
from ..variety import compute_variety, column_relations, removable_points, sample_component
from .common import as_scalar, matrix, m2_positive_definite, peel_point, pivots, ranks, same_point
from .flat import extract_flat_measure
from .outcome import SolveOutcome

COMPONENT_SAMPLES = 21


def rank7_candidates(V, degree, exact):
    """Candidate atoms in search order: removable points first (finite V);
    isolated points and then component samples (infinite V)."""
    if V.is_finite:
        pts = list(V.points)
        first = removable_points(pts, degree)
        return first + [p for p in pts if not any(same_point(p, q) for q in first)]
    out = list(V.points)
    for comp in V.components:
        try:
            out.extend(sample_component(comp, COMPONENT_SAMPLES, exact=exact and comp.is_exact))
        except InconclusiveError:
            continue
    return out


def solve_rank7(beta, V=None, tol=None, candidates=None):
    """7-atomic measure for psd rank-7 data with M(2) > 0 and v >= 8."""
    M = matrix(beta)
    if not la.psd(M, tol):
        return SolveOutcome.refuted("not-psd", route="rank7")
    r, _ = ranks(beta, tol)
    if r != 7:
        raise ValueError(f"rank7 route needs rank 7, got {r}")
    if not m2_positive_definite(beta, tol):
        raise ValueError("rank7 route needs M(2) positive definite")
    if V is None:
        V = compute_variety(column_relations(M, tol))
    if V.cardinality < 8:
        return SolveOutcome.refuted("variety-condition", route="rank7", r=r, v=V.cardinality)
    if candidates is None:
        candidates = rank7_candidates(V, beta.n, beta.exact)
    piv = pivots(M, tol)
    tried = 0
    for pt in candidates:
        tried += 1
        got = peel_point(beta, pt, tol, piv)
        if got is None:
            continue
        rho, residual = got
        Mt = matrix(residual)
        if not la.psd(Mt, tol) or la.rank(Mt, tol).rank != 6 or not m2_positive_definite(residual, tol):
            continue
        try:
            flat = extract_flat_measure(residual, tol)
        except (NoMeasureError, InconclusiveError, ValueError):
            continue
        x, y = (as_scalar(c, beta.exact) for c in pt)
        mu = flat.plus(AtomicMeasure([(x, y, rho)]))
        if mu.support_size != 7:
            continue
        return SolveOutcome.found(mu, route="rank7", point=(x, y), rho=rho, residual_rank=6,
                                  residual_matrix=Mt, peeled=[(x, y, rho)], sub_route="flat",
                                  candidates_tried=tried)
    return SolveOutcome.unknown("candidates-exhausted", route="rank7", candidates_tried=tried)
