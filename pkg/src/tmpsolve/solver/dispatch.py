"""Case classification and the top-level solve."""

import math
from fractions import Fraction

import numpy as np

from .. import exactla as la
from ..core import AffineMap, basis_size, transform_moments
from ..errors import InconclusiveError, NoMeasureError
from ..hankel1d import solve_line_supported
from ..poly2d import BiPoly, ConicClass, classify_conic
from ..variety import column_relations, compute_variety, consistency_check
from .common import matrix, ranks
from .conic import solve_conic
from .extremal import solve_extremal
from .flat import extract_flat_measure
from .outcome import INCONCLUSIVE, CaseTag, SolveOutcome
from .rank7 import solve_rank7
from .rank8 import solve_rank8_v9, solve_rank8_vinf
from .polish import polish
from .verify import verify_measure

# float measures this close to the data are refined before verification
POLISH_WINDOW = 1e-4


LINE_PAIRS = (ConicClass.INTERSECTING, ConicClass.PARALLEL)


def low_degree_relations(M, n, degree, tol=None):
    """Column relations of M(n) that only involve monomials of degree <= ``degree``."""
    A = np.asarray(M)
    k = basis_size(degree)
    return [BiPoly.from_vector(v, degree).cleaned() for v in la.kernel_basis(A[:, :k], tol)]


def _route_for(beta, tol):
    """(CaseTag, context) without running any solver."""
    M = matrix(beta)
    n = beta.n
    if not la.psd(M, tol):
        r, r_prev = ranks(beta, tol)
        return CaseTag(r, math.nan, "not-psd", r_prev), {}
    r, r_prev = ranks(beta, tol)
    if r == r_prev or n == 0:
        return CaseTag(r, r, "flat", r_prev), {}
    lines = low_degree_relations(M, n, 1, tol)
    if lines:
        return CaseTag(r, math.inf, "line", r_prev), {"line": lines[0]}
    if n >= 2:
        conics = low_degree_relations(M, n, 2, tol)
        if conics:
            V = compute_variety(column_relations(M, tol))
            v = V.cardinality
            if r > v:
                return CaseTag(r, v, "variety-condition", r_prev), {"variety": V}
            if r == v:
                return CaseTag(r, v, "extremal", r_prev), {"variety": V}
            return CaseTag(r, v, "conic", r_prev), {"conics": conics, "variety": V}
    size = basis_size(n)
    if n == 3 and r >= 9:
        return CaseTag(r, math.inf if r == size else math.nan, "out-of-scope", r_prev), {}
    V = compute_variety(column_relations(M, tol))
    v = V.cardinality
    ctx = {"variety": V}
    if r > v:
        return CaseTag(r, v, "variety-condition", r_prev), ctx
    if r == v:
        return CaseTag(r, v, "extremal", r_prev), ctx
    if n == 3 and r == 7:
        return CaseTag(r, v, "rank7", r_prev), ctx
    if n == 3 and r == 8:
        return CaseTag(r, v, "rank8_v9" if v == 9 else "rank8_vinf", r_prev), ctx
    return CaseTag(r, v, "out-of-scope", r_prev), ctx


def classify(beta, tol=None):
    """Case tag (rank, variety size, route) of the data."""
    return _route_for(beta, tol)[0]


def normalizing_map(beta):
    """Affine map centering the data at the origin with unit coordinate spread.

    Rank, variety size and existence are affine invariants; the map only
    improves the conditioning of float moment matrices.
    """
    b00 = float(beta[(0, 0)])
    if beta.order < 2 or b00 <= 0:
        return None
    mx, my = float(beta[(1, 0)]) / b00, float(beta[(0, 1)]) / b00
    vx = float(beta[(2, 0)]) / b00 - mx * mx
    vy = float(beta[(0, 2)]) / b00 - my * my
    sx = vx ** 0.5 if vx > 1e-12 * (1 + mx * mx) else 1.0
    sy = vy ** 0.5 if vy > 1e-12 * (1 + my * my) else 1.0
    return AffineMap(1 / sx, 0.0, 0.0, 1 / sy, -mx / sx, -my / sy)


def solve(beta, tol=None):
    """Decide existence of a representing measure and construct one.

    Float data are solved in normalized coordinates; certificate geometry
    (points, curves) then refers to those coordinates, recorded under
    ``normalization``.
    """
    phi = None if beta.exact else normalizing_map(beta)
    work = beta if phi is None else transform_moments(beta, phi)
    try:
        tag, ctx = _route_for(work, tol)
    except InconclusiveError as exc:
        return SolveOutcome.unknown(exc.reason, route="classify", case=None, **exc.details)
    out = _run(work, tag, ctx, tol)
    out.certificate["case"] = tag
    if phi is not None:
        out.certificate["normalization"] = phi
        if out.ok:
            out = SolveOutcome(out.status, out.measure.mapped(phi.inverse()), out.reason, out.certificate)
    if out.ok:
        report = verify_measure(beta, out.measure)
        if not report.passed and not beta.exact and report.max_rel_deviation < POLISH_WINDOW:
            mu = polish(beta, out.measure)
            again = verify_measure(beta, mu)
            if again.passed:
                out = SolveOutcome(out.status, mu, out.reason, out.certificate)
                out.certificate["polished"] = True
                report = again
        out.certificate["verification"] = report
        if not beta.exact and report.support_size < tag.r:
            # fewer atoms than rank M(n) is impossible; the float fit is spurious
            return SolveOutcome.unknown("support-below-rank", **out.certificate)
        if not report.passed:
            # float rank decisions can be wrong near the tolerance; never report an unverified measure
            return SolveOutcome.unknown("verification-failed", **out.certificate)
    return out


def _solve_on_conics(beta, conics, tol):
    """Every measure lives on each relation's zero set, so the first decisive answer stands.

    Line pairs go first since their solvers are complete.
    """
    order = sorted(conics, key=lambda c: classify_conic(c) not in LINE_PAIRS)
    out = None
    for c in order:
        out = solve_conic(beta, c, tol)
        if out.status != INCONCLUSIVE:
            break
    return out


def _run(beta, tag, ctx, tol):
    route = tag.route
    try:
        if route == "not-psd":
            return SolveOutcome.refuted("not-psd", route=route)
        if route == "flat":
            mu = extract_flat_measure(beta, tol)
            return SolveOutcome.found(mu, route="flat", residual_rank=tag.r)
        if route == "line":
            mu = solve_line_supported(beta, ctx["line"], tol)
            return SolveOutcome.found(mu, route="line", line=ctx["line"])
        if route == "conic":
            return _solve_on_conics(beta, ctx["conics"], tol)
        if route == "out-of-scope":
            return SolveOutcome.unknown("out-of-scope", route=route, r=tag.r)
        if route == "variety-condition":
            return SolveOutcome.refuted("variety-condition", route=route, r=tag.r, v=tag.v)
        V = ctx["variety"]
        if beta.exact and not V.exact:
            if route == "rank7" and V.is_finite:
                # no exact consistency test, but a verified measure at rational points still counts
                rational = [p for p in V.points if all(isinstance(c, Fraction) for c in p)]
                out = solve_rank7(beta, V, tol, candidates=rational)
                if out.ok:
                    return out
            return SolveOutcome.unknown("irrational-variety", route=route)
        if not consistency_check(beta, V, tol):
            return SolveOutcome.refuted("inconsistent", route=route, variety=V)
        if route == "extremal":
            return solve_extremal(beta, V, tol)
        if route == "rank7":
            return solve_rank7(beta, V, tol)
        if route == "rank8_v9":
            return solve_rank8_v9(beta, V, tol)
        if route == "rank8_vinf":
            return solve_rank8_vinf(beta, V, tol)
    except NoMeasureError as exc:
        return SolveOutcome.refuted(exc.reason, route=route, **exc.details)
    except InconclusiveError as exc:
        return SolveOutcome.unknown(exc.reason, route=route, **exc.details)
    return SolveOutcome.unknown("unknown-route", route=route)
