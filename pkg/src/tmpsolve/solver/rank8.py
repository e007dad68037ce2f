"""Rank-8 sextic data: the nine-point case and the infinite-variety case.

Nine points.  For removable (a, b) and another point (c, d) the cubic r
vanishing on the remaining seven points must become a column relation once
m1 v(a,b) v(a,b)^T + m2 v(c,d) v(c,d)^T is removed.  Any representing
measure lives on V and forces (m1, m2) to be its densities at the two points;
the solution is unique because r(a,b) and r(c,d) are nonzero.  So a pair
whose system has no nonnegative solution, or whose residual is not psd,
refutes existence outright.

Infinite variety.  The kernel cubics share a conic (case 1) or a line
(case 2); the mass off the common curve is forced by a linear system, and
the rest is solved on the curve.
"""

from fractions import Fraction

import numpy as np

from .. import exactla as la
from ..core import AtomicMeasure, monomial_basis
from ..errors import InconclusiveError, NoMeasureError
from ..hankel1d import solve_line_supported
from ..poly2d import BiPoly, divide, evaluate, poly_gcd
from ..variety import column_relations, compute_variety, removable_points, vandermonde
from .common import as_scalar, matrix, peel, pivots, same_point, vec
from .extremal import solve_extremal
from .flat import extract_flat_measure
from .outcome import SolveOutcome
from .rank7 import solve_rank7

# --- nine points ------------------------------------------------------------------

def step3_cubic(points, piv, degree=3):
    """The cubic supported on the pivot monomials that vanishes on ``points``."""
    E = vandermonde(points, degree)[:, piv]
    ker = la.kernel_basis(E)
    if len(ker) != 1:
        return None
    k = ker[0]
    last = max(i for i, c in enumerate(k) if c != 0)
    k = k / k[last]
    basis = monomial_basis(degree)
    return BiPoly({basis[p]: c for p, c in zip(piv, k) if c != 0})


def step5_masses(beta, r, a, c, tol=None):
    """(m1, m2) with r(X, Y) = 0 in M - m1 v_a v_a^T - m2 v_c v_c^T, or None."""
    M = matrix(beta)
    exact = beta.exact
    n = beta.n
    rhat = r.to_vector(n, exact)
    va, vc = vec(a, n, exact), vec(c, n, exact)
    ra, rc = evaluate(r, a), evaluate(r, c)
    A = np.column_stack([va * ra, vc * rc])
    b = M @ rhat
    if not exact:
        A, b = A.astype(float), b.astype(float)
        x = np.linalg.lstsq(A, b, rcond=None)[0]
        scale = np.linalg.norm(M, 2) * max(np.linalg.norm(rhat), 1)
        if np.linalg.norm(A @ x - b) > 1e-8 * scale:
            return None
        big = max(abs(x[0]), abs(x[1]))
        m1, m2 = (0.0 if abs(v) <= 1e-9 * big else float(v) for v in x)
        return m1, m2
    x = la.solve_consistent(A, b)
    return None if x is None else (x[0], x[1])


def solve_rank8_v9(beta, V=None, tol=None, pairs=None):
    """Measure for psd rank-8 data on a nine-point variety, or a refutation."""
    M = matrix(beta)
    if not la.psd(M, tol):
        return SolveOutcome.refuted("not-psd", route="rank8_v9")
    if V is None:
        V = compute_variety(column_relations(M, tol))
    if V.cardinality != 9:
        raise ValueError("rank8_v9 route needs a nine-point variety")
    exact = beta.exact
    if exact and not V.exact:
        return SolveOutcome.unknown("irrational-variety", route="rank8_v9")
    pts = sorted(V.points, key=lambda p: (float(p[0]), float(p[1])))
    piv = pivots(M, tol)
    if pairs is None:
        pairs = pair_order(pts, removable_points(pts, beta.n, tol))
    infeasible, not_psd, stuck = [], [], []
    first_refutation = None
    for a, c in pairs:
        rest = [p for p in pts if not same_point(p, a) and not same_point(p, c)]
        r = step3_cubic(rest, piv, beta.n)
        if r is None:
            stuck.append((a, c, "no-step3-cubic"))
            continue
        masses = step5_masses(beta, r, a, c, tol)
        if masses is None or min(masses) < 0 or (not exact and min(masses) < -1e-12):
            infeasible.append((a, c, masses))
            first_refutation = first_refutation or ("step5-infeasible", (a, c))
            continue
        m1, m2 = masses
        if not exact:
            m1, m2 = max(m1, 0.0), max(m2, 0.0)
        peeled = [(*a, m1), (*c, m2)]
        residual = peel(beta, peeled)
        Mt = matrix(residual)
        if la.clearly_not_psd(Mt, tol):
            not_psd.append((a, c, m1, m2))
            first_refutation = first_refutation or ("residual-not-psd", (a, c))
            continue
        cert = dict(route="rank8_v9", points=(a, c), m1=m1, m2=m2, r=r, residual_matrix=Mt,
                    peeled=[p for p in peeled if p[2] != 0])
        sub = _residual_route(residual, Mt, tol)
        cert.update(sub[1])
        if sub[0] is None:
            stuck.append((a, c, sub[1].get("sub_reason")))
            continue
        mu = sub[0].plus(AtomicMeasure([p for p in peeled if p[2] != 0])).merged()
        return SolveOutcome.found(mu, **cert)
    cert = dict(route="rank8_v9", infeasible_pairs=infeasible, not_psd_pairs=not_psd, stuck_pairs=stuck)
    # a measure would make every pair feasible with a psd residual, so one failing pair refutes
    if first_refutation is None:
        return SolveOutcome.unknown("pairs-exhausted", **cert)
    reason, pair = first_refutation
    if len(infeasible) == len(pairs):
        reason = "step5-infeasible-all-pairs"
    return SolveOutcome.refuted(reason, points=pair, **cert)


def pair_order(points, removable):
    """Unordered pairs starting from the lex-largest points; within a pair the
    smaller point plays (a, b) when it is removable."""
    desc = sorted(points, key=lambda p: (float(p[0]), float(p[1])), reverse=True)
    is_rem = lambda p: any(same_point(p, q) for q in removable)
    out = []
    for i, c in enumerate(desc):
        for a in desc[i + 1:]:
            if is_rem(a):
                out.append((a, c))
            elif is_rem(c):
                out.append((c, a))
    return out


def _residual_route(residual, Mt, tol):
    """Step 6: flat residual (rank 6), else extremal or rank-7 route (rank 7)."""
    rank = la.rank(Mt, tol).rank
    info = {"residual_rank": rank}
    try:
        if rank == 6:
            info["sub_route"] = "flat"
            return extract_flat_measure(residual, tol), info
        if rank == 7:
            Vt = compute_variety(column_relations(Mt, tol))
            info["residual_variety"] = Vt
            if Vt.cardinality == 7:
                info["sub_route"] = "extremal"
                out = solve_extremal(residual, Vt, tol)
            else:
                info["sub_route"] = "rank7"
                out = solve_rank7(residual, Vt, tol)
            info["sub_certificate"] = out.certificate
            if out.ok:
                return out.measure, info
            info["sub_reason"] = out.reason
            return None, info
    except (NoMeasureError, InconclusiveError, ValueError) as exc:
        info["sub_reason"] = getattr(exc, "reason", str(exc))
        return None, info
    info["sub_reason"] = f"residual-rank-{rank}"
    return None, info


# --- infinite variety -------------------------------------------------------------

def _line_meet(l1, l2):
    a1, b1, c1 = (l1.coeffs.get(k, 0) for k in ((1, 0), (0, 1), (0, 0)))
    a2, b2, c2 = (l2.coeffs.get(k, 0) for k in ((1, 0), (0, 1), (0, 0)))
    det = a1 * b2 - a2 * b1
    if det == 0 or (not isinstance(det, Fraction) and abs(det) < 1e-12 * max(abs(a1) + abs(b1), 1)):
        return None
    return ((b1 * c2 - b2 * c1) / det, (a2 * c1 - a1 * c2) / det)


def _is_relation(M, p, n, exact, tol):
    w = p.to_vector(n, exact)
    res = M @ w
    if exact:
        return all(c == 0 for c in res)
    return np.linalg.norm(res.astype(float)) <= 1e-7 * np.linalg.norm(M.astype(float), 2) * np.linalg.norm(w)


def solve_rank8_vinf(beta, V=None, tol=None):
    """Measure for psd rank-8 data whose kernel cubics share a line or a conic."""
    from .conic import solve_conic

    M = matrix(beta)
    if not la.psd(M, tol):
        return SolveOutcome.refuted("not-psd", route="rank8_vinf")
    rels = column_relations(M, tol)
    if len(rels) != 2:
        raise ValueError("rank8_vinf route needs exactly two column relations")
    p, q = rels
    g = poly_gcd(p, q, tol=1e-7)
    cert = dict(route="rank8_vinf", relations=rels, common_factor=g)
    if g.degree == 2:
        return _case_common_conic(beta, M, p, q, g, cert, tol, solve_conic)
    if g.degree == 1:
        return _case_common_line(beta, M, p, q, g, V, cert, tol)
    return SolveOutcome.refuted("kernel-not-factorable", **cert)


def _case_common_conic(beta, M, p, q, c, cert, tol, solve_conic):
    exact = beta.exact
    n = beta.n
    l1, l2 = divide(p, c, tol=1e-8), divide(q, c, tol=1e-8)
    cert.update(vinf_case=1, conic=c, lines=(l1, l2))
    a0 = _line_meet(l1, l2)
    if a0 is None:
        # every variety point is on c, so c would be a relation of M(2)
        return SolveOutcome.refuted("parallel-line-factors", **cert)
    val = evaluate(c, a0)
    if val == 0 or (not exact and abs(val) < 1e-10 * max(c.scale_norm(), 1)):
        return SolveOutcome.refuted("isolated-point-on-conic", point=a0, **cert)
    piv = pivots(M, tol)
    v = vec(a0, n, exact)
    rho0 = la.rank_one_rho(M[np.ix_(piv, piv)], v[piv])
    a0 = tuple(as_scalar(t, exact) for t in a0)
    residual = peel(beta, [(a0[0], a0[1], rho0)])
    Mc = matrix(residual)
    cert.update(point=a0, rho0=rho0, residual_matrix=Mc, peeled=[(a0[0], a0[1], rho0)])
    # rho0 is forced: any measure puts exactly this mass at a0
    if rho0 <= 0 or la.clearly_not_psd(Mc, tol):
        return SolveOutcome.refuted("conic-residual-not-psd", **cert)
    cert["residual_rank"] = la.rank(Mc, tol).rank
    if not _is_relation(Mc, c, n, exact, tol):
        return SolveOutcome.refuted("conic-relation-missing", **cert)
    out = solve_conic(residual, c, tol)
    cert.update(sub_route=out.certificate.get("sub_route"), sub_certificate=out.certificate,
                conic_class=out.certificate.get("conic_class"))
    if not out.ok:
        if out.status == "NoMeasure":
            return SolveOutcome.refuted(out.reason, **cert)
        return SolveOutcome.unknown(out.reason, **cert)
    mu = out.measure.plus(AtomicMeasure([(a0[0], a0[1], rho0)])).merged()
    return SolveOutcome.found(mu, **cert)


def _case_common_line(beta, M, p, q, ell, V, cert, tol):
    exact = beta.exact
    n = beta.n
    c1, c2 = divide(p, ell, tol=1e-8), divide(q, ell, tol=1e-8)
    cert.update(vinf_case=2, line=ell, conics=(c1, c2))
    if V is None:
        V = compute_variety([p, q])
    pts = [pt for pt in V.points if evaluate(ell, pt) != 0 and
           (exact or abs(evaluate(ell, pt)) > 1e-9)]
    if exact and not all(isinstance(t, Fraction) for pt in pts for t in pt):
        return SolveOutcome.unknown("irrational-variety", **cert)
    if not pts:
        return SolveOutcome.refuted("no-isolated-points", **cert)
    lhat = ell.to_vector(n, exact)
    A = np.column_stack([vec(pt, n, exact) * evaluate(ell, pt) for pt in pts])
    b = M @ lhat
    rho = la.solve_consistent(A, b, tol if tol is not None else 1e-8)
    cert["points"] = list(pts)
    if rho is None:
        return SolveOutcome.refuted("line-system-inconsistent", **cert)
    rho = [as_scalar(r, exact) for r in rho]
    if not exact:
        slack = 1e-9 * max(max(abs(r) for r in rho), 1e-300)
        rho = [0.0 if -slack <= r <= slack else r for r in rho]
    cert["densities"] = rho
    if any(r < 0 for r in rho):
        return SolveOutcome.refuted("negative-density", **cert)
    peeled = [(as_scalar(pt[0], exact), as_scalar(pt[1], exact), r) for pt, r in zip(pts, rho) if r != 0]
    residual = peel(beta, peeled)
    Ml = matrix(residual)
    cert.update(peeled=peeled, residual_matrix=Ml, residual_rank=la.rank(Ml, tol).rank, sub_route="line-supported")
    try:
        mu = solve_line_supported(residual, ell, tol)
    except NoMeasureError as exc:
        return SolveOutcome.refuted(exc.reason, **cert)
    return SolveOutcome.found(mu.plus(AtomicMeasure(peeled)).merged(), **cert)
