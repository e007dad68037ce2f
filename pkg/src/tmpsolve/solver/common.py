"""Shared helpers for the solver routes."""

from fractions import Fraction

import numpy as np

from .. import exactla as la
from ..core import MomentSequence, basis_size, build_moment_matrix, monomial_basis
from ..variety import monomial_vector


def peel(beta, atoms):
    """Moments of beta minus the point masses (x, y, w) in ``atoms``."""
    out = dict(beta.beta)
    for x, y, w in atoms:
        if w == 0:
            continue
        if not beta.exact:
            x, y, w = float(x), float(y), float(w)
        xp, yp = [x ** 0], [y ** 0]
        for _ in range(beta.order):
            xp.append(xp[-1] * x)
            yp.append(yp[-1] * y)
        for (i, j) in monomial_basis(beta.order):
            out[(i, j)] = out[(i, j)] - w * xp[i] * yp[j]
    return MomentSequence(beta.n, out, beta.mode)


def matrix(beta, n=None):
    return build_moment_matrix(beta, n).entries


def ranks(beta, tol=None):
    """(rank M(n), rank M(n-1))."""
    M = matrix(beta)
    r = la.rank(M, tol).rank
    low = basis_size(beta.n - 1) if beta.n else 0
    r_prev = la.rank(M[:low, :low], tol).rank if low else 0
    return r, r_prev


def vec(pt, n, exact):
    return monomial_vector(pt, n, exact)


def m2_positive_definite(beta, tol=None):
    if beta.n < 2:
        return la.positive_definite(matrix(beta), tol)
    return la.positive_definite(matrix(beta, 2), tol)


def fmt_point(pt):
    return tuple(pt)


def as_scalar(v, exact):
    return Fraction(v) if exact else float(v)


def pivots(M, tol=None):
    return list(la.rank(M, tol).pivot_indices)


def peel_point(beta, pt, tol=None, piv=None):
    """Largest rank-one peel rho * v v^T at ``pt`` keeping M psd.

    Returns (rho, residual beta), or None when v(pt) is outside the column
    space in the pivot coordinates (the quadratic form is not positive).
    """
    M = matrix(beta)
    piv = pivots(M, tol) if piv is None else piv
    exact = beta.exact
    pt = tuple(Fraction(c) for c in pt) if exact else tuple(float(c) for c in pt)
    v = vec(pt, beta.n, exact)
    vB = v[piv]
    if all(c == 0 for c in vB):
        return None
    q = vB @ la.solve(M[np.ix_(piv, piv)], vB)
    if q <= 0 or (not exact and q < 1e-300):
        return None
    rho = 1 / q
    return rho, peel(beta, [(pt[0], pt[1], rho)])


def same_point(p, q, tol=1e-9):
    if all(isinstance(c, Fraction) for c in (*p, *q)):
        return tuple(p) == tuple(q)
    return abs(float(p[0]) - float(q[0])) <= tol * (1 + abs(float(p[0]))) and \
        abs(float(p[1]) - float(q[1])) <= tol * (1 + abs(float(p[1])))
