"""Data with a single conic column relation.

Line pairs are moved to XY = 0 or X^2 = X by a degree-one map.  Ellipses,
parabolas and hyperbolas use a sampling fallback.  First, a rational point
P0 of the conic gives the parametrization by the slope m of lines through
P0, x = X(m)/A(m), y = Y(m)/A(m); the data turn into univariate moments of
sigma = sum w A(m)^(-2n) delta_m, solved by the Hankel engine.  The point
missed by the parametrization must carry no mass, so several P0 are tried.
Next come verified rank-one peels at sampled points, and last a
nonnegative least squares fit with an exact re-solve on its support.
"""

import math
from fractions import Fraction

import numpy as np
from scipy.optimize import nnls

from .. import exactla as la
from .. import upoly as up
from ..algebraic import RootBlock
from ..core import AffineMap, AtomicMeasure, basis_size, moments_of, monomial_basis, transform_moments
from ..errors import InconclusiveError, NoMeasureError
from ..poly2d import ConicClass, classify_conic, line_factors
from ..hankel1d import odd_candidates, solve_univariate
from ..variety import sample_component, vandermonde
from .common import matrix, peel_point, pivots, ranks, same_point
from .flat import extract_flat_measure
from .outcome import SolveOutcome
from .separation import solve_x2x, solve_xy0

FALLBACK_SAMPLES = 25
FLOAT_ACCEPT = 1e-5


def _coeffs(ell):
    return (ell.coeffs.get((1, 0), 0), ell.coeffs.get((0, 1), 0), ell.coeffs.get((0, 0), 0))


def line_pair_map(c):
    """Affine map taking the line pair c = 0 to xy = 0 or x^2 - x = 0.

    Returns (map, kind) or None when the lines have no rational factorization.
    """
    kind = classify_conic(c)
    lines = line_factors(c)
    if len(lines) < 2 and kind == ConicClass.INTERSECTING:
        return None
    if kind == ConicClass.INTERSECTING:
        (a1, b1, c1), (a2, b2, c2) = _coeffs(lines[0]), _coeffs(lines[1])
        return AffineMap(a1, b1, a2, b2, c1, c2), "xy0"
    if kind == ConicClass.PARALLEL:
        if not lines:
            return None
        a, b, g1 = _coeffs(lines[0])
        rest = lines[1] if len(lines) > 1 else None
        if rest is None:
            return None
        a2, b2, g2 = _coeffs(rest)
        s = a2 / a if a != 0 else b2 / b
        g2 = g2 / s
        # u = (L + g1)/(g1 - g2) and u - 1 = (L + g2)/(g1 - g2)
        k = g1 - g2
        if a != 0:
            return AffineMap(a / k, b / k, 0, 1, g1 / k, 0), "x2x"
        return AffineMap(a / k, b / k, 1, 0, g1 / k, 0), "x2x"
    return None


def conic_parametrization(c, P0):
    """(A, X, Y) in the slope m with (X(m)/A(m), Y(m)/A(m)) on c, through P0."""
    x0, y0 = P0
    A = [c.coeffs.get((2, 0), 0), c.coeffs.get((1, 1), 0), c.coeffs.get((0, 2), 0)]
    gx = sum(v * i * x0 ** (i - 1) * y0 ** j for (i, j), v in c.coeffs.items() if i)
    gy = sum(v * j * x0 ** i * y0 ** (j - 1) for (i, j), v in c.coeffs.items() if j)
    B = [gx, gy]
    X = up.sub(up.scale(A, x0), B)
    Y = up.sub(up.scale(A, y0), up.mul([0 * gx, 1 + 0 * gx], B))
    return up.trim(A), up.trim(X), up.trim(Y)


def _param_moment_system(beta, A, X, Y):
    n2 = beta.order
    zero = 0 * beta[(0, 0)]
    one = zero + 1
    rows = []
    xp, yp, ap = [[one]], [[one]], [[one]]
    for _ in range(n2):
        xp.append(up.mul(xp[-1], X))
        yp.append(up.mul(yp[-1], Y))
        ap.append(up.mul(ap[-1], A))
    keys = monomial_basis(n2)
    for i, j in keys:
        poly = up.mul(up.mul(xp[i], yp[j]), ap[n2 - i - j])
        row = [zero] * (2 * n2 + 1)
        for k, v in enumerate(poly):
            if k > 2 * n2:
                if v != 0:
                    raise AssertionError("parametrized moment exceeds the expected degree")
                continue
            row[k] = v
        rows.append(row)
    M = np.array(rows, dtype=object if beta.exact else float)
    rhs = np.array([beta[k] for k in keys], dtype=object if beta.exact else float)
    return M, rhs


def _pull_back(sigma, A, X, Y, power, exact):
    """Atoms of sigma on the m-line sent to the conic with densities w A^power."""
    atoms = []
    for m, _, w in sigma.atoms:
        a = up.evaluate(A, m)
        if a == 0 or (not exact and abs(a) < 1e-12):
            return None
        atoms.append((up.evaluate(X, m) / a, up.evaluate(Y, m) / a, w * a ** power))
    blocks = []
    for b in sigma.blocks:
        g = list(b.g)
        T = list(b.X)
        comp = lambda p: up.rem(up.compose(p, T), g)
        try:
            ainv = up.inverse_mod(comp(A), g)
        except (ValueError, ZeroDivisionError):
            return None
        Xb = up.rem(up.mul(comp(X), ainv), g)
        Yb = up.rem(up.mul(comp(Y), ainv), g)
        Nb = up.rem(up.mul(list(b.N), up.power(comp(A), power)), g)
        blocks.append(RootBlock(tuple(g), tuple(Xb), tuple(Yb), tuple(Nb)))
    return AtomicMeasure(atoms, blocks)


def _reproduces(beta, mu, tol):
    got = moments_of(mu, beta.order)
    if beta.exact and mu.exact:
        return got.beta == beta.beta
    # float candidates only need to be close: solve() polishes and verifies them
    scale = max(abs(float(v)) for v in beta.beta.values())
    return all(abs(float(got[k]) - float(beta[k])) <= FLOAT_ACCEPT * max(scale, 1e-300) for k in beta.beta)


def solve_by_parametrization(beta, c, base_points, tol=None):
    """Measure on the conic via univariate moments in the slope parameter."""
    for P0 in base_points:
        A, X, Y = conic_parametrization(c, P0)
        S, rhs = _param_moment_system(beta, A, X, Y)
        g = la.solve_consistent(S, rhs, 1e-10 if tol is None else tol)
        if g is None:
            continue
        g, back = list(g), None
        if not beta.exact:
            g, back = _standardize(g)
        for odd in odd_candidates(g):
            try:
                sigma = solve_univariate(g, tol, odd)
            except NoMeasureError:
                break
            if back is not None:
                sigma = sigma.mapped(back)
            mu = _pull_back(sigma, A, X, Y, beta.order, beta.exact)
            if mu is not None and mu.densities_positive() and _reproduces(beta, mu, tol):
                return mu, P0
    return None


def _standardize(g):
    """Moments of t = (m - c) / s for float data g in m, with the map back to m.

    The parameter moments reach degree 4n, so centering and scaling them is
    what keeps the Hankel matrix usable in double precision.
    """
    if g[0] <= 0:
        return g, None
    c = g[1] / g[0]
    var = g[2] / g[0] - c * c
    if not var > 0:
        return g, None
    sd = var ** 0.5
    out = []
    for k in range(len(g)):
        # E[(m - c)^k] / sd^k by the binomial expansion
        out.append(sum(math.comb(k, i) * g[i] * (-c) ** (k - i) for i in range(k + 1)) / sd ** k)
    return out, AffineMap(sd, 0.0, 0.0, 1.0, c, 0.0)


def peel_to_flat(beta, candidates, tol=None, max_steps=None):
    """Greedy verified peeling at candidate points until the residual is flat.

    Returns (measure, peeled atoms) or None.
    """
    cur = beta
    peeled = []
    steps = basis_size(beta.n) if max_steps is None else max_steps
    for _ in range(steps + 1):
        r, r_prev = ranks(cur, tol)
        if r == r_prev:
            try:
                mu = extract_flat_measure(cur, tol)
            except (NoMeasureError, InconclusiveError, ValueError):
                return None
            return mu.plus(AtomicMeasure(peeled)).merged(), peeled
        M = matrix(cur)
        piv = pivots(M, tol)
        for pt in candidates:
            if any(same_point(pt, p[:2]) for p in peeled):
                continue
            got = peel_point(cur, pt, tol, piv)
            if got is None:
                continue
            rho, res = got
            if not la.psd(matrix(res), tol):
                continue
            rt, rpt = ranks(res, tol)
            if rt != r - 1 or rpt != min(r_prev, rt):
                continue
            x, y = (Fraction(c) for c in pt) if beta.exact else (float(c) for c in pt)
            peeled.append((x, y, rho))
            cur = res
            break
        else:
            return None
    return None


def nnls_fit(beta, candidates, tol=None):
    """Densities on the candidate points by NNLS, re-solved exactly on the support."""
    pts = list(candidates)
    E = vandermonde([(float(x), float(y)) for x, y in pts], beta.order).T
    b = np.array([float(beta[m]) for m in monomial_basis(beta.order)])
    scale = np.maximum(np.abs(E).max(axis=1), 1.0)
    w, _ = nnls(E / scale[:, None], b / scale)
    support = [k for k in range(len(pts)) if w[k] > 1e-12 * max(w.max(), 1e-300)]
    if not support:
        return None
    sub = [pts[k] for k in support]
    Es = vandermonde(sub, beta.order).T
    rhs = [beta[m] for m in monomial_basis(beta.order)]
    if not beta.exact:
        Es = Es.astype(float)
        rhs = np.array(rhs, dtype=float)
    rho = la.solve_consistent(Es, rhs, 1e-10 if tol is None else tol)
    if rho is None or any(v <= 0 for v in rho):
        return None
    return AtomicMeasure([(x, y, v) for (x, y), v in zip(sub, rho)])


def solve_conic(beta, c, tol=None):
    """Measure for data with the conic column relation c(X, Y) = 0."""
    kind = classify_conic(c)
    cert = dict(route="conic", conic=c, conic_class=kind)
    if kind in (ConicClass.INTERSECTING, ConicClass.PARALLEL):
        got = line_pair_map(c)
        if got is None and beta.exact:
            return SolveOutcome.unknown("irrational-line-pair", **cert)
        if got is None:
            return SolveOutcome.unknown("line-pair-not-factored", **cert)
        phi, route = got
        moved = transform_moments(beta, phi)
        out = (solve_xy0 if route == "xy0" else solve_x2x)(moved, tol)
        cert.update(sub_route=route, map=phi, sub_certificate=out.certificate)
        if not out.ok:
            return SolveOutcome(out.status, None, out.reason, cert)
        return SolveOutcome.found(out.measure.mapped(phi.inverse()), **cert)
    if kind not in (ConicClass.ELLIPSE, ConicClass.PARABOLA, ConicClass.HYPERBOLA):
        return SolveOutcome.unknown("degenerate-conic", **cert)
    cert["fallback"] = True
    try:
        samples = sample_component(c, FALLBACK_SAMPLES, exact=beta.exact and c.is_exact)
    except InconclusiveError as exc:
        return SolveOutcome.unknown(exc.reason, **cert)
    got = solve_by_parametrization(beta, c, samples[:8], tol)
    if got is not None:
        mu, P0 = got
        cert.update(sub_route="fallback-parametrization", base_point=P0)
        return SolveOutcome.found(mu, **cert)
    got = peel_to_flat(beta, samples, tol)
    if got is not None:
        mu, peeled = got
        cert.update(sub_route="fallback-peel", peeled=peeled)
        return SolveOutcome.found(mu, **cert)
    mu = nnls_fit(beta, samples, tol)
    if mu is not None:
        cert.update(sub_route="fallback-nnls")
        return SolveOutcome.found(mu, **cert)
    return SolveOutcome.unknown("conic-fallback-failed", **cert)
