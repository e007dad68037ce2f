"""Separation of atoms for data on two lines: XY = 0 and X^2 = X.

The moment matrix splits into two line-supported summands that share one
unknown scalar (the mass w on the y-axis, or the top moment tau on x = 1).
Each summand is psd exactly on an interval for that scalar; at an endpoint
one summand becomes flat, and both are then solved as univariate problems.
"""

import numpy as np

from .. import exactla as la
from ..core import AffineMap, monomial_basis
from ..errors import NoMeasureError
from ..hankel1d import hankel_matrix, solve_univariate
from ..variety import is_recursively_generated
from .common import matrix
from .outcome import SolveOutcome


def _quad(D, c, tol):
    """c^T D^+ c for c in the range of D, else None."""
    if len(c) == 0:
        return 0 * D.sum() if D.size else 0
    x = la.solve_consistent(D, np.asarray(c, dtype=D.dtype), tol)
    return None if x is None else np.asarray(c, dtype=D.dtype) @ x


def _det(A):
    return la.det(A) if A.size else 1


def _preconditions(beta, tol, route):
    M = matrix(beta)
    if la.clearly_not_psd(M, tol):
        return SolveOutcome.refuted("not-psd", route=route)
    if not is_recursively_generated(M, tol):
        return SolveOutcome.refuted("not-recursively-generated", route=route)
    return None


def _close(a, b, exact, tol, scale=1.0):
    if exact:
        return a == b
    return abs(a - b) <= (1e-8 if tol is None else max(tol, 1e-10)) * max(scale, abs(a), abs(b))


def _size(beta):
    # float data arrive after affine maps whose coefficients carry rounding,
    # so a relation is refuted only well above that noise
    return 1.0 if beta.exact else 100 * max(1.0, max(abs(float(v)) for v in beta.beta.values()))


def _vertical(x0):
    """(t, 0) -> (x0, t)."""
    return AffineMap(0, 0, 1, 0, x0, 0)


def _split_solve(candidates, build):
    """Try each value of the free scalar; return (value, mu_1, mu_2) or None."""
    for val in candidates:
        h1, h2 = build(val)
        try:
            return val, solve_univariate(h1), solve_univariate(h2)
        except NoMeasureError:
            continue
    return None


def xy0_quantities(beta, tol=None):
    """Interval data for the XY = 0 split: w_lo = q_A/d_A, w_hi = q_B/d_B, d_A, d_B, d6."""
    n = beta.n
    hy = [beta[(0, j)] for j in range(2 * n + 1)]
    hx = [beta[(i, 0)] for i in range(2 * n + 1)]
    D_A = hankel_matrix(hy[2:], n - 1)
    D_B = hankel_matrix(hx[2:], n - 1)
    qa = _quad(D_A, hy[1:n + 1], tol)
    qb = _quad(D_B, hx[1:n + 1], tol)
    M = matrix(beta)
    basis = monomial_basis(n)
    idx = [0] + [basis.index((k, 0)) for k in range(1, n + 1)] + [basis.index((0, k)) for k in range(1, n + 1)]
    idx.sort()
    d6 = _det(M[np.ix_(idx, idx)])
    d_A, d_B = _det(D_A), _det(D_B)
    w_lo = qa
    w_hi = None if qb is None else beta[(0, 0)] - qb
    return dict(w_lo=w_lo, w_hi=w_hi, d_A=d_A, d_B=d_B, d6=d6,
                q_A=None if qa is None else qa * d_A, q_B=None if w_hi is None else w_hi * d_B,
                compression=[i + 1 for i in idx])


def solve_xy0(beta, tol=None):
    """Measure for psd, recursively generated data with XY = 0."""
    bad = _preconditions(beta, tol, "xy0")
    if bad:
        return bad
    exact = beta.exact
    zero = 0 * beta[(0, 0)]
    sz = _size(beta)
    if any(not _close(beta[(i, j)], zero, exact, tol, sz) for i, j in monomial_basis(beta.order) if i and j):
        return SolveOutcome.refuted("xy-relation-not-propagated", route="xy0")
    n = beta.n
    Q = xy0_quantities(beta, tol)
    cert = dict(route="xy0", **Q)
    w_lo, w_hi = Q["w_lo"], Q["w_hi"]
    if w_lo is None or w_hi is None or (w_lo > w_hi and not _close(w_lo, w_hi, exact, tol)):
        return SolveOutcome.refuted("separation-interval-empty", **cert)
    if Q["d_A"] != 0 and Q["d_B"] != 0:
        width = Q["d6"] / (Q["d_A"] * Q["d_B"])
        cert["identity_holds"] = _close(w_hi - w_lo, width, exact, tol)
    hy = [beta[(0, j)] for j in range(2 * n + 1)]
    hx = [beta[(i, 0)] for i in range(2 * n + 1)]
    b00 = beta[(0, 0)]
    got = _split_solve([w_lo, w_hi, (w_lo + w_hi) / 2],
                       lambda w: ([w] + hy[1:], [b00 - w] + hx[1:]))
    if got is None:
        return SolveOutcome.unknown("separation-endpoints-failed", **cert)
    w, mu_a, mu_b = got
    mu = mu_a.mapped(_vertical(zero)).plus(mu_b).merged()
    cert.update(w=w, sub_route="line-supported")
    return SolveOutcome.found(mu, **cert)


def x2x_quantities(beta, tol=None):
    """Interval data for the X^2 = X split: q1 <= tau <= q0, d3^(0), d3^(1)."""
    n = beta.n
    top = 2 * n
    h1 = [beta[(1, j)] for j in range(top)]
    h0 = [beta[(0, j)] - beta[(1, j)] for j in range(top)]
    D1 = hankel_matrix(h1[:top - 1], n - 1)
    D0 = hankel_matrix(h0[:top - 1], n - 1)
    s1 = _quad(D1, h1[n:top], tol)
    s0 = _quad(D0, h0[n:top], tol)
    M = matrix(beta)
    basis = monomial_basis(n)
    idx = sorted({0, basis.index((1, 0))} | {basis.index((0, k)) for k in range(1, n + 1)}
                 | {basis.index((1, k)) for k in range(1, n)})
    return dict(q1=s1, q0=None if s0 is None else beta[(0, top)] - s0, d3_0=_det(D0), d3_1=_det(D1),
                d_compressed=_det(M[np.ix_(idx, idx)]), compression=[i + 1 for i in idx])


def solve_x2x(beta, tol=None):
    """Measure for psd, recursively generated data with X^2 = X."""
    bad = _preconditions(beta, tol, "x2x")
    if bad:
        return bad
    exact = beta.exact
    n = beta.n
    top = 2 * n
    sz = _size(beta)
    if any(not _close(beta[(i, j)], beta[(1, j)], exact, tol, sz) for i, j in monomial_basis(beta.order) if i > 1):
        return SolveOutcome.refuted("x2x-relation-not-propagated", route="x2x")
    Q = x2x_quantities(beta, tol)
    cert = dict(route="x2x", **Q)
    q1, q0 = Q["q1"], Q["q0"]
    if q1 is None or q0 is None or (q1 > q0 and not _close(q1, q0, exact, tol)):
        return SolveOutcome.refuted("separation-interval-empty", **cert)
    if Q["d3_0"] != 0 and Q["d3_1"] != 0:
        cert["identity_holds"] = _close(q0 - q1, Q["d_compressed"] / (Q["d3_0"] * Q["d3_1"]), exact, tol)
    h1 = [beta[(1, j)] for j in range(top)]
    h0 = [beta[(0, j)] - beta[(1, j)] for j in range(top)]
    b06 = beta[(0, top)]
    got = _split_solve([q1, q0, (q0 + q1) / 2], lambda t: (h1 + [t], h0 + [b06 - t]))
    if got is None:
        return SolveOutcome.unknown("separation-endpoints-failed", **cert)
    tau, mu1, mu0 = got
    zero = 0 * beta[(0, 0)]
    mu = mu1.mapped(_vertical(zero + 1)).plus(mu0.mapped(_vertical(zero))).merged()
    cert.update(tau=tau, sub_route="line-supported")
    return SolveOutcome.found(mu, **cert)
